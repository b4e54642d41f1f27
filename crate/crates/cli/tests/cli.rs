use std::path::{Path, PathBuf};

use ircl::{load, parse_json, render, run, to_json, AlgebraFile, Input, View};
use ircl_core::FinResLat;
use ircl_enumerate::{library, sugihara, NAMES};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ircl-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn updating() -> bool {
    std::env::var_os("IRCL_UPDATE_GOLDEN").is_some()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("ircl").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Library names with a file name for each.
fn library_files() -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> =
        NAMES.iter().filter(|n| !n.contains(':')).map(|n| (n.to_string(), n.to_string())).collect();
    v.push(("sugihara:5".into(), "sugihara_5".into()));
    v.push(("noncomm_sugihara:2:1".into(), "noncomm_sugihara_2_1".into()));
    v
}

#[test]
fn library_files_roundtrip() {
    for (name, file) in library_files() {
        let path = data(&format!("library/{file}.json"));
        let a = library(&name).unwrap();
        let text = to_json(&AlgebraFile::from_algebra(&name, &a));
        if updating() {
            std::fs::write(&path, &text).unwrap();
        }
        let disk = std::fs::read_to_string(&path).unwrap();
        let f = parse_json(&disk).unwrap();
        assert_eq!(to_json(&f), disk, "{file} is not byte-stable");
        assert!(f.to_algebra().unwrap() == a, "{file} differs from the library");
        let (code, _, _) = call(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
}

fn figure_names() -> impl Iterator<Item = &'static str> {
    NAMES.iter().copied().filter(|n| n.starts_with("fig_"))
}

fn views(a: &FinResLat) -> Vec<(&'static str, View)> {
    let mut v = vec![("hasse", View::Hasse), ("flow", View::Flow)];
    if a.is_chain() {
        v.push(("emp", View::Emp));
    }
    v
}

#[test]
fn golden_dot_files() {
    for name in figure_names() {
        let input = load(name).unwrap();
        for (tag, view) in views(&input.algebra().unwrap()) {
            let path = data(&format!("golden/{name}.{tag}.dot"));
            let dot = render(&input, view).unwrap();
            if updating() {
                std::fs::write(&path, &dot).unwrap();
            }
            let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(dot, want, "{name} {tag}");
        }
    }
}

#[test]
fn rendering_is_stable_across_threads() {
    let render_all = || -> Vec<String> {
        figure_names()
            .flat_map(|n| {
                let input = load(n).unwrap();
                let a = input.algebra().unwrap();
                views(&a).into_iter().map(move |(_, v)| render(&input, v).unwrap()).collect::<Vec<_>>()
            })
            .collect()
    };
    let first = render_all();
    let handles: Vec<_> = (0..4).map(|_| std::thread::spawn(render_all)).collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), first);
    }
}

#[test]
fn render_command_writes_the_golden_text() {
    let dir = scratch("render");
    let out = dir.join("x.dot");
    let (code, _, _) = call(&["render", "fig_APfails2_C", "--view", "hasse", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let want = std::fs::read_to_string(data("golden/fig_APfails2_C.hasse.dot")).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), want);
    let (code, _, err) = call(&["render", "fig_APfails2_C", "--view", "emp", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn verify_and_props() {
    assert_eq!(call(&["verify", "sugihara:5"]).0, 0);
    let (code, out, _) = call(&["props", "fig_APfails2_B"]);
    assert_eq!(code, 0);
    assert!(out.contains("rigid: true"));
    assert!(out.contains("conjunctive: false"));
    let (code, out, _) = call(&["props", "fig_APfails_B"]);
    assert_eq!(code, 0);
    assert!(out.contains("rigid: false"));
    assert_eq!(call(&["verify", "no_such_thing"]).0, 3);
    assert_eq!(call(&["frobnicate"]).0, 3);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn broken_table_fails_verification() {
    let dir = scratch("broken");
    let mut f = AlgebraFile::from_algebra("s3", &sugihara(3).unwrap());
    f.mult.as_mut().unwrap().get_mut("a1").unwrap().insert("b1".into(), "a1".into());
    let p = dir.join("bad.json");
    std::fs::write(&p, to_json(&f)).unwrap();
    let (code, _, err) = call(&["verify", p.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn emp_conversion_both_ways() {
    let dir = scratch("emp");
    let (emp, json) = (dir.join("s.emp"), dir.join("s.json"));
    assert_eq!(call(&["emp", "fig_samemon_left", "--to", emp.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(&emp).unwrap();
    assert!(text.starts_with("+1\n"));
    assert_eq!(call(&["emp", emp.to_str().unwrap(), "--to", json.to_str().unwrap()]).0, 0);
    let back = load(json.to_str().unwrap()).unwrap().algebra().unwrap();
    assert!(back == library("fig_samemon_left").unwrap());
    assert_eq!(call(&["emp", "fig_APfails2_B", "--to", emp.to_str().unwrap()]).0, 3);
}

#[test]
fn decompose_prints_blocks() {
    let (code, out, _) = call(&["decompose", "fig_APfails2_B"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("skeleton: a* < b* < 1 < b < a\n"));
    assert!(out.contains("block a [prelattice]: b1 b2 a; covers b1<a b2<a\n"));
    let (code, out, _) = call(&["decompose", "fig_samemon_left"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 8);
    assert!(out.lines().skip(1).all(|l| l.contains("[trivial]")));
}

fn write_alg(dir: &Path, name: &str, a: &FinResLat) -> String {
    let p = dir.join(format!("{name}.json"));
    std::fs::write(&p, to_json(&AlgebraFile::from_algebra(name, a))).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn amalgamate_two_sugihara_chains() {
    let dir = scratch("amalg");
    let b = sugihara(5).unwrap();
    let labels = b.labels().iter().map(|l| if l != "1" && l.ends_with('1') { format!("{l}'") } else { l.clone() }).collect();
    let c = b.relabel(labels).unwrap();
    let set: Vec<usize> = ["b2", "a2", "1"].iter().map(|l| b.index_of(l).unwrap()).collect();
    let a = b.subalgebra(&set).unwrap().0;
    let (pa, pb, pc) = (write_alg(&dir, "A", &a), write_alg(&dir, "B", &b), write_alg(&dir, "C", &c));
    let d = dir.join("D.json");
    let (code, out, err) =
        call(&["amalgamate", &pa, &pb, &pc, "--class", "chains-star-inv", "-o", d.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("D has 7 elements, strong: true"));
    let dd = load(d.to_str().unwrap()).unwrap().algebra().unwrap();
    assert_eq!(dd.len(), 7);
    let (code, out, _) = call(&["search-amalgam", &pa, &pb, &pc, "--class", "chains", "--max-size", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("smallest amalgam: 5 elements"));
    // not star-involutive inputs are refused
    let (code, _, _) = call(&[
        "amalgamate",
        "fig_APfails_A",
        "fig_APfails_B",
        "fig_APfails_C",
        "--class",
        "chains-star-inv",
        "-o",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn search_amalgam_reports_the_bound() {
    let (code, _, err) =
        call(&["search-amalgam", "fig_APfails_A", "fig_APfails_B", "fig_APfails_C", "--class", "chains", "--max-size", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("no amalgam up to 10"), "{err}");
    let (code, _, err) = call(&[
        "search-amalgam",
        "fig_APfailsVar_A",
        "fig_APfailsVar_B",
        "fig_APfailsVar_C",
        "--class",
        "conic-fsi",
        "--max-size",
        "9",
        "--one-sided",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("no 1-amalgam up to 9"), "{err}");
}

#[test]
fn enumerate_and_library_commands() {
    assert_eq!(call(&["enumerate", "--kind", "chains", "--size", "4", "--count"]).1, "6\n");
    assert_eq!(call(&["enumerate", "--kind", "conic", "--size", "4", "--count"]).1, "7\n");
    let dir = scratch("enum");
    let (code, out, _) = call(&["enumerate", "--kind", "fsi", "--size", "4", "--emit", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let n: usize = out.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), n);
    for e in std::fs::read_dir(&dir).unwrap() {
        let p = e.unwrap().path();
        assert!(matches!(load(p.to_str().unwrap()).unwrap(), Input::Algebra { .. }));
    }
    assert_eq!(call(&["enumerate", "--kind", "fsi", "--size", "4"]).0, 3);
    let (code, out, _) = call(&["library", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "fig_samemon_left"));
    let (code, out, _) = call(&["library", "show", "sugihara:3"]);
    assert_eq!(code, 0);
    assert!(parse_json(&out).unwrap().to_algebra().unwrap() == sugihara(3).unwrap());
    assert_eq!(call(&["library", "show", "nope"]).0, 3);
}
