//! Structured results of bound evaluations and threshold solves, plus
//! the CSV formatting shared by the CLI and the test suites.

use serde::Serialize;

/// Result of evaluating one bound or inequality at concrete inputs.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Vec<(String, f64)>,
    pub value: f64,
    pub threshold: f64,
    pub satisfied: bool,
    /// threshold − value unless the bound documents another convention.
    pub margin: f64,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        inputs: &[(&str, f64)],
        value: f64,
        threshold: f64,
        satisfied: bool,
    ) -> Self {
        BoundReport {
            name: name.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value,
            threshold,
            satisfied,
            margin: threshold - value,
        }
    }

    pub fn csv_header() -> &'static str {
        "name,inputs,value,threshold,satisfied,margin"
    }

    pub fn csv_row(&self) -> String {
        let inputs = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{}={}", k, fmt_sig(*v)))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{},{}",
            self.name,
            inputs,
            fmt_sig(self.value),
            fmt_sig(self.threshold),
            self.satisfied,
            fmt_sig(self.margin)
        )
    }
}

/// 12 significant digits, diff-stable; integers print without exponent.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.fract() == 0.0 && v.abs() < 1e15 {
        return format!("{}", v as i64);
    }
    format!("{:.11e}", v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(25.0), "25");
        assert_eq!(fmt_sig(-3.0), "-3");
        assert_eq!(fmt_sig(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn csv_row_shape() {
        let r = BoundReport::new("nu", &[("T", 1000.0)], 0.5, 1.0, true);
        assert_eq!(r.csv_row(), "nu,T=1000,5.00000000000e-1,1,true,5.00000000000e-1");
    }
}
