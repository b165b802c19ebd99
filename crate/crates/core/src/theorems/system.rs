use crate::error::{Error, Result};
use crate::funcexpr::ScalarFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum Capacities {
    /// One function for every block.
    Shared(ScalarFunction),
    /// One function per block, in the same order as the sorted abscissas.
    PerBlock(Vec<ScalarFunction>),
}

/// Positive abscissas `x_1 <= ... <= x_n` with their capacity functions.
///
/// Inputs are sorted on construction; per-block capacities travel with their
/// abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSystem {
    xs: Vec<f64>,
    capacities: Capacities,
}

fn check_xs(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::input("a block system needs at least one block"));
    }
    if let Some(x) = xs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::input(format!("abscissas must be positive and finite, got {x}")));
    }
    Ok(())
}

impl BlockSystem {
    pub fn shared(mut xs: Vec<f64>, f: ScalarFunction) -> Result<Self> {
        check_xs(&xs)?;
        xs.sort_by(f64::total_cmp);
        Ok(BlockSystem { xs, capacities: Capacities::Shared(f) })
    }

    pub fn per_block(mut blocks: Vec<(f64, ScalarFunction)>) -> Result<Self> {
        let xs: Vec<f64> = blocks.iter().map(|b| b.0).collect();
        check_xs(&xs)?;
        blocks.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (xs, fs) = blocks.into_iter().unzip();
        Ok(BlockSystem { xs, capacities: Capacities::PerBlock(fs) })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn capacities(&self) -> &Capacities {
        &self.capacities
    }

    pub fn capacity(&self, i: usize) -> &ScalarFunction {
        match &self.capacities {
            Capacities::Shared(f) => f,
            Capacities::PerBlock(fs) => &fs[i],
        }
    }

    /// `(x_1, x_n)`.
    pub fn span(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_function;

    #[test]
    fn sorts_and_keeps_pairs() {
        let a = parse_function("1", None).unwrap();
        let b = parse_function("2", None).unwrap();
        let sys = BlockSystem::per_block(vec![(4.0, a.clone()), (1.0, b.clone())]).unwrap();
        assert_eq!(sys.xs(), &[1.0, 4.0]);
        assert_eq!(sys.capacity(0), &b);
        assert_eq!(sys.capacity(1), &a);
        let sys = BlockSystem::shared(vec![3.0, 1.0, 2.0], a).unwrap();
        assert_eq!(sys.xs(), &[1.0, 2.0, 3.0]);
        assert_eq!(sys.span(), (1.0, 3.0));
    }

    #[test]
    fn rejects_bad_abscissas() {
        let f = parse_function("1", None).unwrap();
        assert!(BlockSystem::shared(vec![], f.clone()).is_err());
        assert!(BlockSystem::shared(vec![1.0, 0.0], f.clone()).is_err());
        assert!(BlockSystem::shared(vec![1.0, f64::NAN], f).is_err());
    }
}
