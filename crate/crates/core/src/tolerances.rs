/// Numerical knobs shared by the solvers and verifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute error target per 1-D integral.
    pub quad: f64,
    /// Root finder stops once `|F(x)|` is at most this.
    pub residual: f64,
    /// Root finder stops once the bracket is narrower than this fraction of the initial bracket.
    pub width_rel: f64,
    /// An inequality is satisfied when its oriented margin is at least `-verdict`.
    pub verdict: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quad: 1e-10, residual: 1e-10, width_rel: 1e-12, verdict: 1e-8 }
    }
}

impl Tolerances {
    pub fn with_verdict(mut self, tol: f64) -> Self {
        self.verdict = tol;
        self
    }

    pub fn with_quad(mut self, tol: f64) -> Self {
        self.quad = tol;
        self
    }
}
