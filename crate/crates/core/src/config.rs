//! Tolerances and knobs shared across the library.
//!
//! All parameters in scope are algebraic numbers of small height, so f64
//! separates neighbouring families comfortably; the defaults below leave
//! several orders of magnitude of headroom between rounding noise (~1e-15)
//! and the acceptance windows.

/// Which index convention to use for the `P11` even branch.
///
/// The theorem statement prints `H[m;3,3;2]` while its proof derives
/// `H[m/2;3,3;2]`. Both are available; the proof convention is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P11Convention {
    Proof,
    Theorem,
}

/// Runtime configuration: every tolerance and search bound in one place.
#[derive(Debug, Clone)]
pub struct Config {
    /// Unit-determinant check after constructors and products.
    pub eps_det: f64,
    /// Matrix equality up to global sign.
    pub eps_eq: f64,
    /// Maximum imaginary part for the real-parameter predicate.
    pub eps_im: f64,
    /// Residual for rational-rotation recognition of β.
    pub eps_recog: f64,
    /// Residual below which a family row counts as matched.
    pub eps_match: f64,
    /// Coarser window under which a near-miss is reported as `nearest`.
    pub eps_report: f64,
    /// Residual bound on realized parameter triples.
    pub eps_realize: f64,
    /// Residual bound for matrix certificates (relators, traces).
    pub eps_cert: f64,
    /// Eigenvalue cutoff for Gram signature classification.
    pub eps_eig: f64,
    /// Tolerance used by `match_cosh2` around the parabolic value 1.
    pub u_tol: f64,
    /// Relative window |p̂ − round(p̂)| < int_window · p̂ for integer recovery.
    pub int_window: f64,
    /// Largest finite index searched by `match_cosh2`.
    pub p_max: u32,
    /// Largest elliptic order recognized from β.
    pub n_max: u32,
    /// Index convention for the P11 even branch.
    pub p11_convention: P11Convention,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            eps_det: 1e-10,
            eps_eq: 1e-10,
            eps_im: 1e-9,
            eps_recog: 1e-9,
            eps_match: 1e-9,
            eps_report: 1e-6,
            eps_realize: 1e-10,
            eps_cert: 1e-8,
            eps_eig: 1e-9,
            u_tol: 1e-9,
            int_window: 1e-6,
            p_max: 1000,
            n_max: 1000,
            p11_convention: P11Convention::Proof,
        }
    }
}

impl Config {
    /// Parse a `key = value` config file body, overriding defaults.
    ///
    /// Unknown keys are rejected so that typos do not silently fall back
    /// to defaults. Lines starting with `#` and blank lines are ignored.
    pub fn parse_overrides(&mut self, body: &str) -> Result<(), String> {
        for (lineno, line) in body.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |k: &str| format!("line {}: invalid value for {}", lineno + 1, k);
            match key {
                "eps_det" => self.eps_det = value.parse().map_err(|_| bad(key))?,
                "eps_eq" => self.eps_eq = value.parse().map_err(|_| bad(key))?,
                "eps_im" => self.eps_im = value.parse().map_err(|_| bad(key))?,
                "eps_recog" => self.eps_recog = value.parse().map_err(|_| bad(key))?,
                "eps_match" => self.eps_match = value.parse().map_err(|_| bad(key))?,
                "eps_report" => self.eps_report = value.parse().map_err(|_| bad(key))?,
                "eps_realize" => self.eps_realize = value.parse().map_err(|_| bad(key))?,
                "eps_cert" => self.eps_cert = value.parse().map_err(|_| bad(key))?,
                "eps_eig" => self.eps_eig = value.parse().map_err(|_| bad(key))?,
                "u_tol" => self.u_tol = value.parse().map_err(|_| bad(key))?,
                "int_window" => self.int_window = value.parse().map_err(|_| bad(key))?,
                "p_max" => self.p_max = value.parse().map_err(|_| bad(key))?,
                "n_max" => self.n_max = value.parse().map_err(|_| bad(key))?,
                "p11_index_convention" => {
                    self.p11_convention = match value {
                        "proof" => P11Convention::Proof,
                        "theorem" => P11Convention::Theorem,
                        _ => return Err(bad(key)),
                    }
                }
                _ => return Err(format!("line {}: unknown key {}", lineno + 1, key)),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse_and_reject_unknown() {
        let mut cfg = Config::default();
        cfg.parse_overrides("eps_match = 1e-8\np_max = 500\np11_index_convention = theorem\n")
            .unwrap();
        assert_eq!(cfg.eps_match, 1e-8);
        assert_eq!(cfg.p_max, 500);
        assert_eq!(cfg.p11_convention, P11Convention::Theorem);
        assert!(Config::default().parse_overrides("no_such_key = 1").is_err());
    }
}
