use std::path::Path;

use greenseq::exchange::{EulerData, ExchangeError};
use greenseq::{IntMatrix, QuiverSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk quiver description. Matrices are arrays of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub n: usize,
    pub d: Vec<i64>,
    pub b0: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Vec<i64>>>,
}

impl QuiverFile {
    pub fn from_spec(spec: &QuiverSpec) -> Self {
        Self {
            n: spec.rank(),
            d: spec.symmetrizer().to_vec(),
            b0: spec.b0().to_rows(),
            e: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad quiver JSON: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        let list = |v: &[i64]| {
            let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", items.join(", "))
        };
        let matrix = |m: &[Vec<i64>]| {
            let rows: Vec<String> = m.iter().map(|r| format!("    {}", list(r))).collect();
            format!("[\n{}\n  ]", rows.join(",\n"))
        };
        let mut out = format!(
            "{{\n  \"n\": {},\n  \"d\": {},\n  \"b0\": {}",
            self.n,
            list(&self.d),
            matrix(&self.b0)
        );
        if let Some(e) = &self.e {
            out.push_str(&format!(",\n  \"e\": {}", matrix(e)));
        }
        out.push_str("\n}");
        out
    }

    /// Validates and builds the spec; a supplied `e` must satisfy
    /// `D B0 = E^t - E` and agree with the reconstructed Euler matrix.
    pub fn to_spec(&self) -> Result<QuiverSpec, CliError> {
        if self.d.len() != self.n || self.b0.len() != self.n {
            return Err(CliError::Input(format!(
                "n = {} but d has {} entries and b0 has {} rows",
                self.n,
                self.d.len(),
                self.b0.len()
            )));
        }
        let spec = QuiverSpec::from_rows(self.d.clone(), &self.b0).map_err(invalid)?;
        if let Some(rows) = &self.e {
            let e = IntMatrix::from_rows(rows)
                .filter(|m| m.rows() == self.n && m.cols() == self.n)
                .ok_or_else(|| CliError::Input(format!("e must be {0}x{0}", self.n)))?;
            let db = spec.d_matrix().mul(spec.b0());
            if db != e.transpose().sub(&e) {
                return Err(CliError::Input("D b0 != e^t - e".into()));
            }
            EulerData::from_spec_checked(&spec, &e).map_err(invalid)?;
        }
        Ok(spec)
    }
}

fn invalid(e: ExchangeError) -> CliError {
    CliError::Input(format!("invalid quiver: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_matching_euler_matrix() {
        let f = QuiverFile::parse(r#"{"n":2,"d":[1,1],"b0":[[0,2],[-2,0]],"e":[[1,-2],[0,1]]}"#)
            .unwrap();
        assert!(f.to_spec().is_ok());
    }

    #[test]
    fn json_round_trip() {
        let f = QuiverFile {
            n: 2,
            d: vec![2, 1],
            b0: vec![vec![0, -1], vec![2, 0]],
            e: Some(vec![vec![2, 0], vec![-2, 1]]),
        };
        assert_eq!(QuiverFile::parse(&f.to_json()).unwrap(), f);
        assert!(f.to_spec().is_ok());
    }

    #[test]
    fn rejects_bad_inputs() {
        for text in [
            r#"{"n":2,"d":[1,1],"b0":[[0,2],[-2,0]],"e":[[1,0],[-2,1]]}"#,
            r#"{"n":3,"d":[1,1],"b0":[[0,2],[-2,0]]}"#,
            r#"{"n":2,"d":[1,1],"b0":[[0,1],[1,0]]}"#,
            r#"{"n":2,"d":[1,1],"b0":[[0,1],[-1,0]],"x":1}"#,
            r#"{"n":2,"d":[0,1],"b0":[[0,1],[-1,0]]}"#,
        ] {
            let r = QuiverFile::parse(text).and_then(|f| f.to_spec());
            assert!(matches!(r, Err(CliError::Input(_))), "{text}");
        }
    }
}
