use proptest::prelude::*;

use super::*;

/// Odd Sugihara chain b_k < ... < b_1 < 1 < a_1 < ... < a_k by its defining rule:
/// the factor farther from 1 wins, ties go to the meet.
fn sugihara(k: usize) -> FinResLat {
    let n = 2 * k + 1;
    // position p in the chain; 1 sits at k
    let mut labels = Vec::new();
    for i in (1..=k).rev() {
        labels.push(format!("b{i}"));
    }
    labels.push("1".into());
    for i in 1..=k {
        labels.push(format!("a{i}"));
    }
    let dist = |p: usize| (p as i64 - k as i64).abs();
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for p in 0..n {
        for q in 0..n {
            leq[p * n + q] = p <= q;
            mult[p * n + q] = match dist(p).cmp(&dist(q)) {
                std::cmp::Ordering::Greater => p,
                std::cmp::Ordering::Less => q,
                std::cmp::Ordering::Equal => p.min(q),
            };
        }
    }
    FinResLat::from_order(labels, leq, mult, k).unwrap()
}

fn el(a: &FinResLat, l: &str) -> Elem {
    a.index_of(l).unwrap()
}

#[test]
fn trivial_algebra_is_valid() {
    let t = build_algebra_raw(&["1"], &[], vec![0], 0).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(t.inv_ell(0), 0);
    assert_eq!(t.inv_r(0), 0);
    assert!(t.is_idempotent() && t.is_chain() && t.is_conic());
}

#[test]
fn sugihara3_flags() {
    let a = build_algebra_raw(&["b", "1", "a"], &[(0, 1), (1, 2)], vec![0, 0, 0, 0, 1, 2, 0, 2, 2], 1)
        .unwrap();
    let s = sugihara(1);
    assert_eq!(a.order_matrix(), s.order_matrix());
    assert_eq!(a.mult_table(), s.mult_table());
    assert!(a.is_idempotent() && a.is_commutative() && a.is_chain());
}

#[test]
fn corrupted_sugihara3_rejected_with_witness() {
    // mult(b, a) changed from b to a
    let mult = vec![0, 0, 2, 0, 1, 2, 0, 2, 2];
    let err = build_algebra_raw(&["b", "1", "a"], &[(0, 1), (1, 2)], mult.clone(), 1).unwrap_err();
    assert!(
        matches!(err, BuildError::NotResiduated { .. } | BuildError::NotAssociative { .. }),
        "{err:?}"
    );
    // independent check: some (x, z) admits no largest y with xy <= z, or no largest x
    let le = |p: usize, q: usize| p <= q;
    let no_adjoint = (0..3).any(|x| {
        (0..3).any(|z| {
            let ys: Vec<usize> = (0..3).filter(|&y| le(mult[x * 3 + y], z)).collect();
            let xs: Vec<usize> = (0..3).filter(|&w| le(mult[w * 3 + x], z)).collect();
            ys.is_empty() || xs.is_empty()
        })
    });
    assert!(no_adjoint);
}

#[test]
fn rejects_non_lattice_order() {
    // two incomparable maximal elements
    let err = build_algebra_raw(&["0", "p", "q"], &[(0, 1), (0, 2)], vec![0; 9], 0).unwrap_err();
    assert!(matches!(err, BuildError::NotALattice { .. }));
}

#[test]
fn rejects_cyclic_covers_and_duplicate_labels() {
    let err = build_algebra_raw(&["x", "y"], &[(0, 1), (1, 0)], vec![0; 4], 0).unwrap_err();
    assert!(matches!(err, BuildError::CyclicCovers(_)));
    let err = build_algebra_raw(&["x", "x"], &[(0, 1)], vec![0; 4], 0).unwrap_err();
    assert!(matches!(err, BuildError::DuplicateLabel(_)));
}

#[test]
fn supplied_residuals_must_match() {
    let a = sugihara(1);
    let n = a.len();
    let ld: Vec<Elem> = (0..n * n).map(|c| a.ld(c / n, c % n)).collect();
    let rd: Vec<Elem> = (0..n * n).map(|c| a.rd(c / n, c % n)).collect();
    let ok = FinResLat::with_residuals(
        a.labels().to_vec(),
        a.order_matrix().to_vec(),
        a.mult_table().to_vec(),
        a.unit(),
        &ld,
        &rd,
    );
    assert!(ok.is_ok());
    let mut bad = ld.clone();
    bad[0] = (bad[0] + 1) % n;
    let err = FinResLat::with_residuals(
        a.labels().to_vec(),
        a.order_matrix().to_vec(),
        a.mult_table().to_vec(),
        a.unit(),
        &bad,
        &rd,
    );
    assert!(matches!(err, Err(BuildError::ResidualMismatch { .. })));
}

#[test]
fn unit_is_self_inverse() {
    for k in 0..4 {
        let a = sugihara(k);
        assert_eq!(a.inv_ell(a.unit()), a.unit());
        assert_eq!(a.inv_r(a.unit()), a.unit());
        assert_eq!(a.star_low(a.unit()), Ok(a.unit()));
        assert_eq!(a.star_high(a.unit()), Ok(a.unit()));
        assert_eq!(a.partner(a.unit()), Ok(a.unit()));
        assert_eq!(a.gamma(a.unit()), a.unit());
    }
}

#[test]
fn sugihara5_inverses_pair_bi_with_ai() {
    let a = sugihara(2);
    assert_eq!(a.inv_r(el(&a, "b1")), el(&a, "a1"));
    assert_eq!(a.inv_r(el(&a, "b2")), el(&a, "a2"));
    assert_eq!(a.inv_ell(el(&a, "a2")), el(&a, "b2"));
}

#[test]
fn sugihara5_a1_is_central_and_its_own_partner() {
    let a = sugihara(2);
    let a1 = el(&a, "a1");
    // table scan for commutation
    assert!(a.elems().all(|y| a.mult(a1, y) == a.mult(y, a1)));
    assert_eq!(a.partner(a1), Ok(a1));
    assert!(a.signed(a1).central);
    assert_eq!(a.signed(a1).sign, Some(Sign::Positive));
    assert_eq!(a.signed(a.unit()).sign, Some(Sign::Both));
}

#[test]
fn skeleton_of_sugihara_is_itself() {
    for k in 0..4 {
        let a = sugihara(k);
        let (s, incl) = a.skeleton().unwrap();
        assert_eq!(s, a);
        assert_eq!(incl, (0..a.len()).collect::<Vec<_>>());
        for x in a.elems() {
            assert_eq!(a.gamma(x), x);
        }
        assert!(a.is_quasi_involutive());
        assert!(a.is_star_involutive());
        assert!(a.verify_nucleus().passed());
        assert!(a.blocks().values().all(|b| b.len() == 1));
    }
}

#[test]
fn godel_chain_has_one_brouwerian_block() {
    // 0 < c < 1 with meet as product: skeleton {1}, block = everything
    let a = build_algebra_raw(&["0", "c", "1"], &[(0, 1), (1, 2)], vec![0, 0, 0, 0, 1, 1, 0, 1, 2], 2)
        .unwrap();
    assert_eq!(a.inverses(), vec![2]);
    assert_eq!(a.block_kind(2), BlockKind::Brouwerian);
    assert_eq!(a.blocks().len(), 1);
    assert!(a.verify_nucleus().passed());
    assert!(a.is_conjunctive() && a.blocks_are_lattices());
    assert!(a.is_integral());
}

#[test]
fn star_ops_reject_non_conic() {
    // the four-element Boolean lattice with meet as product, unit at the top
    // is conic; a product of two 3-chains with the unit in the middle is not
    let s = sugihara(1);
    let p = s.product(&s);
    assert!(!p.is_conic());
    assert!(matches!(p.star_low(0), Err(CoreError::NotConic(_))));
    assert!(!p.is_rigid() && !p.is_conjunctive() && !p.is_star_involutive());
}

#[test]
fn conjugates_by_unit_and_commutative_symmetry() {
    let a = sugihara(2);
    for x in a.elems() {
        assert_eq!(a.conjugates(a.unit(), x).0, a.meet(x, a.unit()));
        let (l, r) = a.conjugates(x, x);
        assert_eq!(l, r);
        for y in a.elems() {
            let (l, r) = a.conjugates(x, y);
            assert_eq!(l, r);
        }
    }
}

#[test]
fn subalgebra_and_generation() {
    let a = sugihara(2);
    let sub = vec![el(&a, "b2"), a.unit(), el(&a, "a2")];
    let (s, incl) = a.subalgebra(&sub).unwrap();
    assert_eq!(s.len(), 3);
    assert!(is_embedding(&s, &a, &incl));
    assert!(a.subalgebra(&[el(&a, "b2"), a.unit()]).is_none());
    assert_eq!(a.generate(&[el(&a, "b1")]), vec![el(&a, "b1"), a.unit(), el(&a, "a1")]);
    // {1}, {b1,1,a1}, {b2,1,a2}, all
    assert_eq!(a.subuniverses().len(), 4);
}

fn sugihara_or_product() -> impl Strategy<Value = FinResLat> {
    prop_oneof![
        (0usize..4).prop_map(sugihara),
        (0usize..2, 0usize..2).prop_map(|(i, j)| sugihara(i).product(&sugihara(j))),
    ]
}

proptest! {
    #[test]
    fn adjointness_cell_by_cell(a in sugihara_or_product(), seed in any::<u64>()) {
        let n = a.len() as u64;
        let (x, y, z) = ((seed % n) as usize, ((seed / n) % n) as usize, ((seed / n / n) % n) as usize);
        let p = a.leq(a.mult(x, y), z);
        prop_assert_eq!(p, a.leq(y, a.ld(x, z)));
        prop_assert_eq!(p, a.leq(x, a.rd(z, y)));
    }

    #[test]
    fn star_galois_and_splitting(k in 0usize..5, seed in any::<u64>()) {
        let a = sugihara(k);
        let n = a.len() as u64;
        let (x, y) = ((seed % n) as usize, ((seed / n) % n) as usize);
        let (sx, sy) = (a.star_low(x).unwrap(), a.star_low(y).unwrap());
        prop_assert_eq!(a.leq(x, sy), a.leq(y, sx));
        prop_assert!(a.leq(y, sx) || a.leq(a.star_high(x).unwrap(), y));
        let (l, r) = (a.inv_ell(x), a.inv_r(x));
        prop_assert!(a.comparable(l, r));
        // no element strictly between the two inverses
        prop_assert!(!a.elems().any(|c| a.lt(a.meet(l, r), c) && a.lt(c, a.join(l, r))));
    }

    #[test]
    fn gamma_is_a_nucleus(k in 0usize..5, seed in any::<u64>()) {
        let a = sugihara(k);
        let n = a.len() as u64;
        let (x, y) = ((seed % n) as usize, ((seed / n) % n) as usize);
        prop_assert!(a.leq(x, a.gamma(x)));
        prop_assert_eq!(a.gamma(a.gamma(x)), a.gamma(x));
        if a.leq(x, y) { prop_assert!(a.leq(a.gamma(x), a.gamma(y))); }
        prop_assert!(a.leq(a.mult(a.gamma(x), a.gamma(y)), a.gamma(a.mult(x, y))));
    }

    #[test]
    fn chains_are_conservative(k in 0usize..5, seed in any::<u64>()) {
        let a = sugihara(k);
        let n = a.len() as u64;
        let (x, y) = ((seed % n) as usize, ((seed / n) % n) as usize);
        let p = a.mult(x, y);
        prop_assert!(p == x || p == y);
    }

    #[test]
    fn permutation_preserves_structure(k in 0usize..4, seed in any::<u64>()) {
        let a = sugihara(k);
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            let j = (s % (i as u64 + 1)) as usize;
            s /= i as u64 + 1;
            perm.swap(i, j);
        }
        let b = a.permute(&perm);
        prop_assert!(is_embedding(&a, &b, &perm));
        prop_assert_eq!(b.is_star_involutive(), a.is_star_involutive());
    }
}
