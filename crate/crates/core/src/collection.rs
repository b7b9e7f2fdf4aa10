//! Parameter collections driving the zeta and beta certificates, with
//! feasibility validation.

use crate::error::{Error, Result};

/// Integral parameters (s; m1, m2; delta_1..delta_{s+1}) for the zeta-side
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCollection {
    pub s: u32,
    pub m1: i64,
    pub m2: i64,
    pub deltas: Vec<i64>,
}

impl ZetaCollection {
    pub fn new(s: u32, m1: i64, m2: i64, deltas: Vec<i64>) -> Result<Self> {
        let c = ZetaCollection { s, m1, m2, deltas };
        c.validate()?;
        Ok(c)
    }

    /// Checks every feasibility inequality, reporting all violations.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        if self.s < 5 || self.s % 2 == 0 {
            errs.push(format!("s must be an odd integer >= 5, got {}", self.s));
        }
        if self.m1 < 1 {
            errs.push(format!("m1 >= 1 required, got {}", self.m1));
        }
        if self.m2 < 1 {
            errs.push(format!("m2 >= 1 required, got {}", self.m2));
        }
        if self.deltas.len() != self.s as usize + 1 {
            errs.push(format!(
                "expected s+1 = {} delta values, got {}",
                self.s + 1,
                self.deltas.len()
            ));
        }
        for (j, &d) in self.deltas.iter().enumerate() {
            if !(0 <= d && 2 * d < self.m2) {
                errs.push(format!("0 <= delta_{} < m2/2 violated: delta = {d}", j + 1));
            }
        }
        let sum: i64 = self.deltas.iter().sum();
        let bound2 = (self.s as i64 - 2) * self.m2 - 8 * self.m1;
        if 2 * sum >= bound2 {
            errs.push(format!(
                "sum(delta) < ((s-2) m2 - 8 m1)/2 violated: 2*{sum} >= {bound2}"
            ));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Infeasible(errs))
        }
    }

    pub fn delta_min(&self) -> i64 {
        *self.deltas.iter().min().expect("nonempty deltas")
    }

    /// m2 - 2*delta_min: the denominator of the mid marker and the scale of
    /// the D_N tower.
    pub fn m_scale(&self) -> i64 {
        self.m2 - 2 * self.delta_min()
    }

    /// The published collection behind the s = 35 theorem.
    pub fn paper_s35() -> Self {
        let deltas = (1..=36)
            .map(|j| match j {
                1..=5 => 4,
                6..=11 => j - 1,
                12..=32 => 2 * j - 12,
                _ => 4 * j - 76,
            })
            .collect();
        ZetaCollection::new(35, 209, 243, deltas).expect("published collection is feasible")
    }

    /// Small feasible collection used throughout the desk-scale suite.
    pub fn toy() -> Self {
        ZetaCollection::new(5, 1, 4, vec![0; 6]).expect("toy collection is feasible")
    }
}

/// Integral parameters (eta_0; eta_1..eta_s) for the beta-side construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCollection {
    pub s: u32,
    pub eta0: i64,
    pub etas: Vec<i64>,
}

impl BetaCollection {
    pub fn new(s: u32, eta0: i64, etas: Vec<i64>) -> Result<Self> {
        let c = BetaCollection { s, eta0, etas };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        if self.s % 2 == 0 || self.s < 3 {
            errs.push(format!("s must be an odd integer >= 3, got {}", self.s));
        }
        if self.eta0 < 1 {
            errs.push(format!("eta0 >= 1 required, got {}", self.eta0));
        }
        if self.etas.len() != self.s as usize {
            errs.push(format!("expected s = {} eta values, got {}", self.s, self.etas.len()));
        }
        for (j, &e) in self.etas.iter().enumerate() {
            if !(0 < e && 2 * e < self.eta0) {
                errs.push(format!("0 < eta_{} < eta0/2 violated: eta = {e}", j + 1));
            }
        }
        let sum: i64 = self.etas.iter().sum();
        if 2 * sum > (self.s as i64 - 1) * self.eta0 {
            errs.push(format!(
                "sum(eta) <= (s-1) eta0 / 2 violated: 2*{sum} > {}",
                (self.s as i64 - 1) * self.eta0
            ));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Infeasible(errs))
        }
    }

    pub fn eta_min(&self) -> i64 {
        *self.etas.iter().min().expect("nonempty etas")
    }

    /// eta0 - 2*eta_min: M-tilde is this times n.
    pub fn m_scale(&self) -> i64 {
        self.eta0 - 2 * self.eta_min()
    }

    /// The published collection behind the beta(10) theorem.
    pub fn paper_s11() -> Self {
        BetaCollection::new(11, 94, vec![32, 32, 32, 32, 33, 34, 35, 36, 37, 38, 39])
            .expect("published collection is feasible")
    }

    pub fn toy() -> Self {
        BetaCollection::new(3, 4, vec![1, 1, 1]).expect("toy collection is feasible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_collections_are_feasible() {
        let z = ZetaCollection::paper_s35();
        assert_eq!(z.deltas.len(), 36);
        assert_eq!(z.delta_min(), 4);
        assert_eq!(z.m_scale(), 235);
        assert_eq!(z.deltas[5], 5); // delta_6 = j-1
        assert_eq!(z.deltas[31], 52); // delta_32 = 2j-12
        assert_eq!(z.deltas[35], 68); // delta_36 = 4j-76

        let b = BetaCollection::paper_s11();
        assert_eq!(b.m_scale(), 30);
    }

    #[test]
    fn delta_sum_violation_is_reported() {
        // toy has headroom 2; push sum(delta) to 2 to break strictness
        let r = ZetaCollection::new(5, 1, 4, vec![1, 1, 0, 0, 0, 0]);
        match r {
            Err(Error::Infeasible(v)) => {
                assert!(v.iter().any(|m| m.contains("sum(delta)")), "{v:?}")
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn all_violations_are_listed() {
        let r = ZetaCollection::new(5, 0, 1, vec![5, 0, 0, 0, 0, 0]);
        match r {
            Err(Error::Infeasible(v)) => assert!(v.len() >= 3, "{v:?}"),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn beta_eta_bound() {
        assert!(BetaCollection::new(3, 4, vec![2, 1, 1]).is_err()); // eta_j < eta0/2 fails
        assert!(BetaCollection::new(3, 4, vec![1, 1, 1]).is_ok());
        assert!(BetaCollection::new(3, 4, vec![0, 1, 1]).is_err());
    }
}
