use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use super::{CoweightVector, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::rational::{fmt_rational, frac_unit, to_f64, Q};

/// An element of `P/Q`, equivalently a character of the center, stored as the
/// vector `m` with `m_i` in `(0, 1]`. The trivial class is `m = (1, ..., 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterClass {
    pub m: Vec<Q>,
}

impl CenterClass {
    pub fn new(m: Vec<Q>) -> Self {
        Self { m: m.iter().map(frac_unit).collect() }
    }

    pub fn trivial(rank: usize) -> Self {
        Self { m: vec![Q::one(); rank] }
    }

    pub fn is_trivial(&self) -> bool {
        self.m.iter().all(|x| x.is_one())
    }

    pub fn add(&self, other: &CenterClass) -> CenterClass {
        CenterClass::new(self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> CenterClass {
        CenterClass::new(self.m.iter().map(|a| -a).collect())
    }

    /// `xi(a) = exp(2 pi i beta(a))` as a phase `beta(a)` mod 1, for `a` in the coweight lattice
    /// given in coroot coordinates.
    pub fn phase(&self, rs: &RootSystem, a: &CoweightVector) -> Q {
        let beta = rs.beta_of_class(self);
        frac_unit(&a.pairing(&beta))
    }

    /// Phase for `a = sum n_i omega_i^vee`: `sum n_i m_i`, as a float in `[0, 1)`.
    pub fn phase_f64(&self, n: &[i64]) -> f64 {
        let total: f64 = self.m.iter().zip(n).map(|(m, &k)| to_f64(m) * k as f64).sum();
        total - total.floor()
    }

    pub fn strings(&self) -> Vec<String> {
        self.m.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for CenterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.strings().join(","))
    }
}

impl RootSystem {
    /// All `det_cartan` classes, trivial first then in lexicographic order.
    pub fn center_classes(&self) -> Vec<CenterClass> {
        let n = self.rank();
        let gens: Vec<CenterClass> = (0..n)
            .map(|i| CenterClass::new(self.root_coordinates(&self.fundamental_weight(i))))
            .collect();
        let trivial = CenterClass::trivial(n);
        let mut seen: BTreeSet<CenterClass> = BTreeSet::new();
        seen.insert(trivial.clone());
        let mut stack = vec![trivial.clone()];
        while let Some(c) = stack.pop() {
            for g in &gens {
                let d = c.add(g);
                if seen.insert(d.clone()) {
                    stack.push(d);
                }
            }
        }
        let mut out = vec![trivial.clone()];
        out.extend(seen.into_iter().filter(|c| *c != trivial));
        out
    }

    /// `beta = sum m_i alpha_i`, an integral weight representing the class.
    pub fn beta_of_class(&self, c: &CenterClass) -> Weight {
        self.from_root_coordinates(&c.m)
    }

    pub fn class_of_weight(&self, lambda: &Weight) -> Result<CenterClass> {
        self.check_rank(lambda)?;
        if !lambda.is_integral() {
            return Err(Error::NotIntegral(lambda.to_string()));
        }
        Ok(CenterClass::new(self.root_coordinates(lambda)))
    }

    /// Checks that `c` really is one of the classes of this root system.
    pub fn validate_class(&self, c: &CenterClass) -> Result<()> {
        if c.m.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: c.m.len() });
        }
        let beta = self.beta_of_class(c);
        if !beta.is_integral() || self.class_of_weight(&beta)? != *c {
            return Err(Error::InvalidArgument(format!("{c} is not a class of P/Q for {}", self.spec)));
        }
        Ok(())
    }

    /// Phase of `xi(a)` for `a` with coroot coordinates `coords`; helper for tests.
    pub fn xi_phase_exact(&self, c: &CenterClass, coords: &[Q]) -> Q {
        let beta = self.beta_of_class(c);
        let v = dot(&beta.coords, coords);
        let f = frac_unit(&v);
        if f.is_one() {
            Q::zero()
        } else {
            f
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn class_counts() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
            let r = RootSystem::new(t).unwrap();
            assert_eq!(r.center_classes().len() as i64, r.det_cartan, "{t}");
        }
    }

    #[test]
    fn a1_classes_and_betas() {
        let r = RootSystem::new("A1").unwrap();
        let classes = r.center_classes();
        assert_eq!(classes, vec![CenterClass { m: vec![qi(1)] }, CenterClass { m: vec![q(1, 2)] }]);
        assert_eq!(r.beta_of_class(&classes[1]), Weight::from_ints(&[1]));
        assert_eq!(r.beta_of_class(&classes[0]), Weight::from_ints(&[2]));
        assert_eq!(r.class_of_weight(&Weight::from_ints(&[1])).unwrap(), classes[1]);
    }

    #[test]
    fn a2_examples() {
        let r = RootSystem::new("A2").unwrap();
        let trivial = CenterClass::trivial(2);
        assert_eq!(r.beta_of_class(&trivial), r.rho);
        let c1 = r.class_of_weight(&Weight::from_ints(&[1, 0])).unwrap();
        assert_eq!(c1.m, vec![q(2, 3), q(1, 3)]);
        assert_eq!(r.beta_of_class(&c1), Weight::from_ints(&[1, 0]));
        assert!(r.class_of_weight(&Weight::from_ints(&[2, -1])).unwrap().is_trivial());
        assert!(r.class_of_weight(&Weight::from_ints(&[1, 1])).unwrap().is_trivial());
        assert!(r.class_of_weight(&Weight::new(vec![q(1, 2), qi(0)])).is_err());
    }

    #[test]
    fn g2_single_class() {
        let r = RootSystem::new("G2").unwrap();
        assert_eq!(r.center_classes(), vec![CenterClass::trivial(2)]);
    }

    #[test]
    fn beta_round_trip_and_group_law() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4"] {
            let r = RootSystem::new(t).unwrap();
            let classes = r.center_classes();
            for c in &classes {
                let beta = r.beta_of_class(c);
                assert!(beta.is_integral());
                assert_eq!(&r.class_of_weight(&beta).unwrap(), c);
                for d in &classes {
                    let sum = &beta + &r.beta_of_class(d);
                    assert_eq!(r.class_of_weight(&sum).unwrap(), c.add(d));
                }
                assert!(c.add(&c.inverse()).is_trivial());
            }
        }
    }
}
