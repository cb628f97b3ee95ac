//! Named quivers.
//!
//! - `A(n)` / `An`: linear, arrows `i+1 -> i`.
//! - `C2-paper`: `d = (2,1)`, `b0 = [[0,-1],[2,0]]`.
//! - `B2`: `d = (1,2)`, `b0 = [[0,-2],[1,0]]`.
//! - `G2`: `d = (3,1)`, `b0 = [[0,-1],[3,0]]`.
//! - `kronecker`: `d = (1,1)`, `b0 = [[0,2],[-2,0]]`.
//! - `Atilde(p,q)`: a `p+q` cycle `1 <- 2 <- ... <- p+1` followed by
//!   `p+1 -> p+2 -> ... -> p+q -> 1`.

use greenseq::{IntMatrix, QuiverSpec};

use crate::CliError;

pub const PRESET_NAMES: &[&str] = &["A(n)", "C2-paper", "B2", "G2", "kronecker", "Atilde(p,q)"];

fn rank2(d: [i64; 2], b: [[i64; 2]; 2]) -> QuiverSpec {
    QuiverSpec::from_rows(d.to_vec(), &[b[0].to_vec(), b[1].to_vec()]).expect("valid preset")
}

fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> QuiverSpec {
    let mut b = IntMatrix::zeros(n, n);
    for &(a, t) in arrows {
        b.set(t, a, b.get(t, a) + 1);
        b.set(a, t, b.get(a, t) - 1);
    }
    QuiverSpec::new(vec![1; n], b).expect("valid preset")
}

pub fn linear_a(n: usize) -> QuiverSpec {
    let arrows: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i + 1, i)).collect();
    from_arrows(n, &arrows)
}

pub fn affine_a(p: usize, q: usize) -> QuiverSpec {
    let n = p + q;
    let mut arrows: Vec<(usize, usize)> = (0..p).map(|i| (i + 1, i)).collect();
    for i in p..n {
        arrows.push((i, (i + 1) % n));
    }
    from_arrows(n, &arrows)
}

fn parse_args(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

pub fn preset(name: &str) -> Result<QuiverSpec, CliError> {
    let unknown = || {
        CliError::Input(format!(
            "unknown preset '{name}'; known: {}",
            PRESET_NAMES.join(", ")
        ))
    };
    match name {
        "C2-paper" | "C2" => return Ok(rank2([2, 1], [[0, -1], [2, 0]])),
        "B2" => return Ok(rank2([1, 2], [[0, -2], [1, 0]])),
        "G2" => return Ok(rank2([3, 1], [[0, -1], [3, 0]])),
        "kronecker" => return Ok(rank2([1, 1], [[0, 2], [-2, 0]])),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("Atilde") {
        match parse_args(rest).as_deref() {
            Some(&[p, q]) if p >= 1 && q >= 1 => return Ok(affine_a(p, q)),
            _ => return Err(unknown()),
        }
    }
    if let Some(rest) = name.strip_prefix('A') {
        let n = match parse_args(rest).as_deref() {
            Some(&[n]) => Some(n),
            Some(_) => None,
            None => rest.parse().ok(),
        };
        if let Some(n) = n.filter(|&n| n >= 1) {
            return Ok(linear_a(n));
        }
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_preset_is_exact() {
        let s = preset("C2-paper").unwrap();
        assert_eq!(s.symmetrizer(), &[2, 1]);
        assert_eq!(s.b0().to_rows(), vec![vec![0, -1], vec![2, 0]]);
    }

    #[test]
    fn affine_orientation() {
        let s = preset("Atilde(2,1)").unwrap();
        assert_eq!(
            s.b0().to_rows(),
            vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]
        );
        let s = preset("Atilde(3,1)").unwrap();
        assert_eq!(
            s.b0().to_rows(),
            vec![
                vec![0, 1, 0, 1],
                vec![-1, 0, 1, 0],
                vec![0, -1, 0, 1],
                vec![-1, 0, -1, 0]
            ]
        );
    }

    #[test]
    fn name_forms() {
        assert_eq!(preset("A3").unwrap(), preset("A(3)").unwrap());
        assert_eq!(preset("A1").unwrap().rank(), 1);
        for bad in ["A0", "A(x)", "Atilde(2)", "E8", ""] {
            assert!(preset(bad).is_err(), "{bad}");
        }
    }
}
