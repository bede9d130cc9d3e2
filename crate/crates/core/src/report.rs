use serde::Serialize;

/// Reproducible counterexample attached to a failed check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub inputs: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn new(inputs: Vec<Vec<f64>>, values: Vec<f64>) -> Self {
        Self { inputs, values, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Result of a sampling-based property check.
///
/// `worst_defect` is the largest violation measure seen (positive means the
/// property was broken by that much); `witness` is the *first* failing input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub passed: bool,
    pub samples: usize,
    pub worst_defect: f64,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub(crate) fn new(property: impl Into<String>) -> Self {
        Self {
            property: property.into(),
            passed: true,
            samples: 0,
            worst_defect: f64::NEG_INFINITY,
            witness: None,
        }
    }

    /// Records one sample with the given defect; fails it when `defect > tol`.
    pub(crate) fn record(&mut self, defect: f64, tol: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        if defect > self.worst_defect || defect.is_nan() {
            self.worst_defect = defect;
        }
        if !(defect <= tol) && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        if self.samples == 0 {
            self.worst_defect = 0.0;
        }
        self
    }

    /// Merges several reports under one name; the first failing member
    /// provides the witness.
    pub fn combine(property: impl Into<String>, parts: &[PropertyReport]) -> Self {
        let mut out = Self::new(property);
        out.samples = parts.iter().map(|p| p.samples).sum();
        out.worst_defect = parts.iter().map(|p| p.worst_defect).fold(f64::NEG_INFINITY, f64::max);
        if let Some(bad) = parts.iter().find(|p| !p.passed) {
            out.passed = false;
            out.witness = bad.witness.clone().map(|mut w| {
                let note = match w.note.take() {
                    Some(n) => format!("{}: {n}", bad.property),
                    None => bad.property.clone(),
                };
                w.with_note(note)
            });
        }
        out.finish()
    }
}
