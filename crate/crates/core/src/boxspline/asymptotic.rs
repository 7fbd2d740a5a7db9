//! Finite-`N` estimator of the DH density of `rho` from weight multiplicities
//! of `V_{N rho}`.

use crate::charalg::{multiplicity, weyl_dim};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootsys::{RootSystem, Weight};

/// `mult_{N rho}(N mu) N^r / (dim V_{N rho} det A)`. Requires `N mu` to be
/// integral; it is zero off the root-lattice coset of `N rho`.
pub fn dh_density_from_multiplicities(rs: &RootSystem, mu: &Weight, n: u32) -> Result<Q> {
    rs.check_rank(mu)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let lambda = rs.rho.scale(&qi(n as i64));
    let nu = mu.scale(&qi(n as i64));
    if !nu.is_integral() {
        return Err(Error::NotIntegral(format!("{n} * {mu}")));
    }
    let mult = multiplicity(rs, &lambda, &nu)?;
    let dim = weyl_dim(rs, &lambda)?;
    let scale = qi(n as i64).pow(rs.rank() as i32);
    Ok(qi(mult) * scale / (Q::from_integer((dim as i64).into()) * qi(rs.det_cartan)))
}
