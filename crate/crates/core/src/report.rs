//! Line-oriented reports with a JSON mirror.

use std::fmt::Write as _;

use serde::Serialize;

use crate::hilbert::{StateVector, Subspace, C64};

/// Exit code of a computation: 0 success (including rule-failure
/// findings), 1 bad input, 2 internal invariant violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExitStatus {
    Success = 0,
    InputError = 1,
    InvariantViolation = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub kind: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub value: String,
}

/// Ordered `kind [name] = value` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    entries: Vec<Entry>,
    exit: ExitStatus,
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

impl Report {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
            exit: ExitStatus::Success,
        }
    }

    pub fn push(&mut self, kind: impl Into<String>, name: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry {
            kind: kind.into(),
            name: name.into(),
            value: value.to_string(),
        });
    }

    /// An entry without a name, rendered `kind = value`.
    pub fn field(&mut self, kind: impl Into<String>, value: impl ToString) {
        self.push(kind, "", value);
    }

    pub fn set_exit(&mut self, exit: ExitStatus) {
        self.exit = exit;
    }

    pub fn exit(&self) -> ExitStatus {
        self.exit
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// First value recorded under `kind` and `name`.
    pub fn value(&self, kind: &str, name: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.kind == kind && e.name == name)
            .map(|e| e.value.as_str())
    }

    /// All values of `kind`/`name` in order, for reports with repeated sections.
    pub fn values(&self, kind: &str, name: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.kind == kind && e.name == name)
            .map(|e| e.value.as_str())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if e.name.is_empty() {
                let _ = writeln!(out, "{} = {}", e.kind, e.value);
            } else {
                let _ = writeln!(out, "{} {} = {}", e.kind, e.name, e.value);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Mirror<'a> {
            entries: &'a [Entry],
            exit_code: i32,
        }
        let mirror = Mirror {
            entries: &self.entries,
            exit_code: self.exit.code(),
        };
        serde_json::to_string_pretty(&mirror).expect("report serializes") + "\n"
    }
}

/// Fixed twelve-decimal rendering with trailing zeros removed, so that
/// values differing only by rounding noise print identically.
pub fn fmt_real(x: f64) -> String {
    let mut s = format!("{x:.12}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn fmt_complex(z: C64) -> String {
    let re = fmt_real(z.re);
    let im = fmt_real(z.im);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

pub fn fmt_vector(v: &StateVector) -> String {
    let parts: Vec<String> = v.amplitudes().iter().map(|&z| fmt_complex(z)).collect();
    format!("({})", parts.join(", "))
}

/// `{0}`, `H`, or `span{v1; v2; ...}`.
pub fn fmt_subspace(s: &Subspace) -> String {
    if s.is_zero() {
        "{0}".into()
    } else if s.is_full() {
        "H".into()
    } else {
        let parts: Vec<String> = s.basis_vectors().iter().map(fmt_vector).collect();
        format!("span{{{}}}", parts.join("; "))
    }
}
