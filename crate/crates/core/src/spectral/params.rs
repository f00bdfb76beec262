use serde::{Deserialize, Serialize};

/// Integrability and smoothness parameters of a class `W^{a,b}_q` measured in `L_p`.
///
/// For `W^r_q` set `a = r`, `b = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessParams {
    pub q: f64,
    pub p: f64,
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    pub d: usize,
}

impl SmoothnessParams {
    pub fn new(q: f64, p: f64, a: f64, b: f64, d: usize) -> Self {
        Self { q, p, a, b, d }
    }

    /// `W^r_q` in `L_p`.
    pub fn w(q: f64, p: f64, r: f64, d: usize) -> Self {
        Self::new(q, p, r, 0.0, d)
    }

    pub fn r(&self) -> f64 {
        self.a
    }

    /// `beta = 1/q - 1/p`.
    pub fn beta(&self) -> f64 {
        1.0 / self.q - 1.0 / self.p
    }

    /// `eta = 1/q - 1/2`.
    pub fn eta(&self) -> f64 {
        1.0 / self.q - 0.5
    }

    /// Conjugate exponent `p' = p / (p - 1)`.
    pub fn p_conj(&self) -> f64 {
        if self.p.is_infinite() {
            1.0
        } else {
            self.p / (self.p - 1.0)
        }
    }

    /// `min(p, 2)`.
    pub fn p_low(&self) -> f64 {
        self.p.min(2.0)
    }

    /// `max(p, 2)`.
    pub fn p_high(&self) -> f64 {
        self.p.max(2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents() {
        let s = SmoothnessParams::w(2.0, 4.0, 0.42, 1);
        assert!((s.beta() - 0.25).abs() < 1e-15);
        assert!((s.p_conj() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.eta(), 0.0);
        let t = SmoothnessParams::new(1.5, 2.0, 0.5, 0.0, 2);
        assert!((t.beta() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(t.p_low(), 2.0);
    }
}
