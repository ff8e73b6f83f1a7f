//! Two specializations of the three-singular-point equation: the generalized
//! associated Legendre functions with orders (m, n), and the universal
//! associated Legendre polynomials P_{ℓ′}^{m′}.

mod generalized;
mod universal;

pub use generalized::{
    generalized_branches, generalized_solutions, kuipers_ode, kuipers_reduction_check, map_to_triple,
    GeneralizedBranches, LegendreTriple,
};
pub use universal::{
    quadratic_path_check, universal_hypergeometric, universal_ode_embedding, universal_sum, QuadraticPath,
    UniversalParams, UniversalSolution,
};

/// Legendre polynomial Pₖ(x) from Bonnet's recurrence
/// (j+1)P_{j+1} = (2j+1)x P_j - j P_{j-1}.
pub fn legendre_polynomial(k: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let j = f64::from(j);
        let next = ((2.0 * j + 1.0) * x * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bonnet_low_degrees() {
        for x in [-0.8, -0.1, 0.0, 0.35, 0.9] {
            assert_eq!(legendre_polynomial(0, x), 1.0);
            assert_eq!(legendre_polynomial(1, x), x);
            assert!((legendre_polynomial(2, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
            assert!((legendre_polynomial(3, x) - 0.5 * (5.0 * x * x * x - 3.0 * x)).abs() < 1e-15);
        }
        assert_eq!(legendre_polynomial(2, 0.5), -0.125);
        assert!((legendre_polynomial(6, 1.0) - 1.0).abs() < 1e-15);
    }
}
