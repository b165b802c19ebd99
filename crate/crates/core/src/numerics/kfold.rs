//! k-fold integrals over the cube `[y, xi]^k` for odd `k`.
//!
//! Integrands are products of per-axis factors, so the k-fold integral is the
//! product of 1-D signed integrals. A tensor-product Gauss-Legendre rule is
//! kept for general integrands and as a cross-check.

use std::sync::OnceLock;

use super::quad::{integrate, integrate_ratio};
use crate::error::{Error, Result};
use crate::funcexpr::{ScalarFunction, Segmented};

pub const MAX_SEPARABLE_K: u32 = 9;
pub const MAX_TENSOR_K: u32 = 5;
pub const GAUSS_NODES: usize = 32;

pub fn check_odd(k: u32) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::EvenDimension(k));
    }
    Ok(())
}

/// `(sign)^k * |v|^k` for a signed 1-D value; odd `k` keeps the sign.
pub fn odd_power(v: f64, k: u32) -> f64 {
    v.powi(k as i32)
}

/// `int_y^xi ... int_y^xi prod_j f_j(z_j) / g_j(z_j) dz_1..dz_k`.
///
/// `factors_g` may be empty, meaning a unit weight on every axis.
pub fn integrate_kfold(
    factors_f: &[ScalarFunction],
    factors_g: &[ScalarFunction],
    y: f64,
    xi: f64,
    k: u32,
    tol: f64,
) -> Result<f64> {
    check_odd(k)?;
    if k > MAX_SEPARABLE_K {
        return Err(Error::DimensionLimit { k, max: MAX_SEPARABLE_K });
    }
    if factors_f.len() != k as usize || !(factors_g.is_empty() || factors_g.len() == k as usize) {
        return Err(Error::input(format!(
            "expected {k} factors per integrand, got {} and {}",
            factors_f.len(),
            factors_g.len()
        )));
    }
    let mut prod = 1.0;
    for (j, f) in factors_f.iter().enumerate() {
        prod *= match factors_g.get(j) {
            Some(g) => integrate_ratio(f, g, y, xi, tol)?.value,
            None => integrate(f, y, xi, tol)?.value,
        };
    }
    Ok(prod)
}

/// k-fold integral whose factors are the same `f` (and weight `g`) on every axis.
pub fn kfold_identical<F, G>(f: &F, g: Option<&G>, y: f64, xi: f64, k: u32, tol: f64) -> Result<f64>
where
    F: Segmented + ?Sized,
    G: Segmented + ?Sized,
{
    check_odd(k)?;
    if k > MAX_SEPARABLE_K {
        return Err(Error::DimensionLimit { k, max: MAX_SEPARABLE_K });
    }
    let one = match g {
        Some(g) => integrate_ratio(f, g, y, xi, tol)?.value,
        None => integrate(f, y, xi, tol)?.value,
    };
    Ok(odd_power(one, k))
}

/// Tensor-product Gauss-Legendre over the sorted cube, times `sign(xi - y)^k`.
pub fn integrate_kfold_tensor(integrand: impl Fn(&[f64]) -> Result<f64>, y: f64, xi: f64, k: u32) -> Result<f64> {
    check_odd(k)?;
    if k > MAX_TENSOR_K {
        return Err(Error::DimensionLimit { k, max: MAX_TENSOR_K });
    }
    if y == xi {
        return Ok(0.0);
    }
    let (lo, hi) = if y < xi { (y, xi) } else { (xi, y) };
    let (nodes, weights) = gauss_legendre();
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let pts: Vec<f64> = nodes.iter().map(|t| mid + half * t).collect();

    let k = k as usize;
    let mut idx = vec![0usize; k];
    let mut z = vec![pts[0]; k];
    let mut sum = 0.0;
    loop {
        let w: f64 = idx.iter().map(|&i| weights[i]).product();
        sum += w * integrand(&z)?;
        // odometer increment
        let mut axis = 0;
        loop {
            if axis == k {
                let sign = if xi > y { 1.0 } else { -1.0 };
                return Ok(sign * sum * half.powi(k as i32));
            }
            idx[axis] += 1;
            if idx[axis] < GAUSS_NODES {
                z[axis] = pts[idx[axis]];
                break;
            }
            idx[axis] = 0;
            z[axis] = pts[0];
            axis += 1;
        }
    }
}

/// Integrand `prod_j f_j(z_j) / g_j(z_j)` for the tensor rule.
pub fn separable_integrand<'a>(
    factors_f: &'a [ScalarFunction],
    factors_g: &'a [ScalarFunction],
) -> impl Fn(&[f64]) -> Result<f64> + 'a {
    move |z: &[f64]| {
        let mut p = 1.0;
        for (j, &zj) in z.iter().enumerate() {
            p *= factors_f[j].eval(zj)?;
            if let Some(g) = factors_g.get(j) {
                p /= g.eval(zj)?;
            }
        }
        Ok(p)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_NODES;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - t * t) * dp * dp);
            nodes[i] = -t;
            nodes[n - 1 - i] = t;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_function;

    fn copies(text: &str, k: usize) -> Vec<ScalarFunction> {
        vec![parse_function(text, None).unwrap(); k]
    }

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre();
        let total: f64 = weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // degree 62 is the highest exact degree for 32 nodes
        let m: f64 = nodes.iter().zip(weights).map(|(t, w)| w * t.powi(62)).sum();
        assert!((m - 2.0 / 63.0).abs() < 1e-13);
    }

    #[test]
    fn unit_cube_and_sign_rule() {
        let ones = copies("1", 3);
        assert!((integrate_kfold(&ones, &ones, 0.5, 1.5, 3, 1e-10).unwrap() - 1.0).abs() < 1e-14);
        let xs = copies("x", 3);
        let up = integrate_kfold(&xs, &ones, 1.0, 2.0, 3, 1e-10).unwrap();
        assert!((up - 3.375).abs() < 1e-12);
        let down = integrate_kfold(&xs, &[], 2.0, 1.0, 3, 1e-10).unwrap();
        assert!((down + 3.375).abs() < 1e-12);
    }

    #[test]
    fn rejects_even_and_oversized_k() {
        let f = copies("1", 2);
        assert!(matches!(integrate_kfold(&f, &[], 1.0, 2.0, 2, 1e-10), Err(Error::EvenDimension(2))));
        let f = copies("1", 11);
        assert!(matches!(integrate_kfold(&f, &[], 1.0, 2.0, 11, 1e-10), Err(Error::DimensionLimit { .. })));
        assert!(matches!(integrate_kfold_tensor(|_| Ok(1.0), 1.0, 2.0, 7), Err(Error::DimensionLimit { .. })));
        assert!(matches!(integrate_kfold_tensor(|_| Ok(1.0), 1.0, 2.0, 4), Err(Error::EvenDimension(4))));
    }

    #[test]
    fn tensor_matches_separable_on_reversed_cube() {
        let f = vec![
            parse_function("x^2 + 1", None).unwrap(),
            parse_function("exp(0.3*x)", None).unwrap(),
            parse_function("sqrt(x)", None).unwrap(),
        ];
        let g = vec![
            parse_function("x", None).unwrap(),
            parse_function("1 + x^2", None).unwrap(),
            parse_function("exp(x/4)", None).unwrap(),
        ];
        let sep = integrate_kfold(&f, &g, 3.0, 0.7, 3, 1e-12).unwrap();
        let ten = integrate_kfold_tensor(separable_integrand(&f, &g), 3.0, 0.7, 3).unwrap();
        assert!(sep < 0.0);
        assert!(((sep - ten) / sep).abs() < 1e-10, "{sep} vs {ten}");
    }
}
