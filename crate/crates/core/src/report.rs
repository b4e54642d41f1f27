use std::fmt;

/// Outcome of one named check; failing checks carry a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

/// A list of named checks against one subject.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    /// Record a check; `None` means it passed.
    pub fn check(&mut self, name: impl Into<String>, witness: Option<String>) -> &mut Self {
        self.checks.push(Check { name: name.into(), ok: witness.is_none(), witness });
        self
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.check(name, None)
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) -> &mut Self {
        self.check(name, Some(witness.into()))
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            let name = if other.subject.is_empty() {
                c.name
            } else {
                format!("{}: {}", other.subject, c.name)
            };
            self.checks.push(Check { name, ..c });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.passed() { "ok" } else { "FAILED" })?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  [ok]   {}", c.name)?,
                Some(w) => writeln!(f, "  [fail] {} ({})", c.name, w)?,
            }
        }
        Ok(())
    }
}
