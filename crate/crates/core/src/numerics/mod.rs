//! Quadrature, k-fold integration, brute-force oracle and root finding.

mod kfold;
mod quad;
mod riemann;
mod root;

pub use kfold::{
    check_odd, integrate_kfold, integrate_kfold_tensor, kfold_identical, odd_power, separable_integrand, GAUSS_NODES,
    MAX_SEPARABLE_K, MAX_TENSOR_K,
};
pub use quad::{integrate, integrate_ratio, QuadResult, MAX_DEPTH, VANISHING_WEIGHT};
pub use riemann::riemann_oracle;
pub use root::{bisect_root, try_bisect_root, RootResult, MAX_ITERATIONS};
