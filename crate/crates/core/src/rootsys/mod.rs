//! Finite irreducible root systems: Cartan data, lattices, the Weyl group and
//! the center `P/Q`.
//!
//! Weights are stored in the fundamental-weight basis. Cartan matrices follow
//! Bourbaki numbering with `cartan[i][j] = <alpha_j, alpha_i^vee>`, so column
//! `j` holds the fundamental-weight coordinates of the simple root `alpha_j`.

mod center;
mod weight;
mod weyl;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Signed, Zero};

pub use center::CenterClass;
pub use weight::{CoweightVector, Weight};
pub use weyl::WeylElement;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{qi, Q};

pub const DEFAULT_RANK_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Dynkin type such as `A2` or `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeRank {
    pub family: Family,
    pub rank: usize,
}

impl TypeRank {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{}{rank} is not a finite irreducible type", family.letter())))
        }
    }
}

impl FromStr for TypeRank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("missing or malformed rank in {s:?}")))?;
        Self::new(family, rank)
    }
}

impl fmt::Display for TypeRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

pub(crate) type DominantTable = BTreeMap<Vec<i64>, i64>;

/// Immutable Cartan, root and weight data for one irreducible finite type.
pub struct RootSystem {
    pub spec: TypeRank,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in fundamental-weight coordinates, sorted by height.
    pub positive_roots: Vec<Weight>,
    pub rho: Weight,
    /// `d` with `(alpha_i, alpha_j) = d_i * cartan[i][j]`; long roots have squared length 2.
    pub symmetrizer: Vec<Q>,
    pub weyl_order: u64,
    pub det_cartan: i64,
    rank_cap: usize,
    cartan_q: Matrix,
    cartan_inv: Matrix,
    /// `(omega_i, omega_j)`.
    gram: Matrix,
    root_coords: Vec<Vec<i64>>,
    pub(crate) weyl_cache: OnceLock<Vec<WeylElement>>,
    pub(crate) mult_cache: Mutex<HashMap<Vec<i64>, Arc<DominantTable>>>,
}

impl Clone for RootSystem {
    fn clone(&self) -> Self {
        Self {
            spec: self.spec,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            rho: self.rho.clone(),
            symmetrizer: self.symmetrizer.clone(),
            weyl_order: self.weyl_order,
            det_cartan: self.det_cartan,
            rank_cap: self.rank_cap,
            cartan_q: self.cartan_q.clone(),
            cartan_inv: self.cartan_inv.clone(),
            gram: self.gram.clone(),
            root_coords: self.root_coords.clone(),
            weyl_cache: OnceLock::new(),
            mult_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("spec", &self.spec)
            .field("cartan", &self.cartan)
            .field("positive_roots", &self.positive_roots.len())
            .field("weyl_order", &self.weyl_order)
            .field("det_cartan", &self.det_cartan)
            .finish()
    }
}

fn cartan_matrix(spec: TypeRank) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match spec.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
                if j < n {
                    link(i, j);
                }
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match spec.family {
        Family::B => a[n - 1][n - 2] = -2,
        Family::C => a[n - 2][n - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Positive roots in simple-root coordinates via root strings.
fn positive_root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut ordered = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // <beta, alpha_i^vee>
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up.clone());
                        ordered.push(up);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    ordered.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    ordered
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Q> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j].is_none() {
                // d_i A_ij = d_j A_ji
                let dj = d[i].clone().unwrap() * qi(cartan[i][j]) / qi(cartan[j][i]);
                d[j] = Some(dj);
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    let max = d.iter().max().unwrap().clone();
    d.into_iter().map(|x| x / &max).collect()
}

/// Weyl group order from the exponents read off the root height distribution.
fn weyl_order_from_heights(root_coords: &[Vec<i64>]) -> u64 {
    let max_height = root_coords.iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(0) as usize;
    let mut counts = vec![0i64; max_height + 2];
    for r in root_coords {
        counts[r.iter().sum::<i64>() as usize] += 1;
    }
    let mut order = 1u64;
    for h in 1..=max_height {
        let exponents_equal_h = counts[h] - counts[h + 1];
        for _ in 0..exponents_equal_h {
            order *= h as u64 + 1;
        }
    }
    order
}

pub fn build_root_system(spec: TypeRank) -> Result<RootSystem> {
    let spec = TypeRank::new(spec.family, spec.rank)?;
    let cartan = cartan_matrix(spec);
    let n = spec.rank;
    let cartan_q: Matrix = cartan.iter().map(|row| row.iter().map(|&x| qi(x)).collect()).collect();
    let cartan_inv = linalg::inverse(&cartan_q).expect("Cartan matrices are invertible");
    let det = linalg::det(&cartan_q);
    let det_cartan = crate::rational::to_i64(&det).expect("integral determinant");
    let root_coords = positive_root_closure(&cartan);
    let positive_roots: Vec<Weight> = root_coords
        .iter()
        .map(|c| Weight::from_ints(&(0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum()).collect::<Vec<i64>>()))
        .collect();
    let rho = Weight::from_ints(&vec![1; n]);
    let sym = symmetrizer(&cartan);
    let gram: Matrix = (0..n)
        .map(|i| (0..n).map(|j| &sym[i] * &cartan_inv[i][j]).collect())
        .collect();
    let weyl_order = weyl_order_from_heights(&root_coords);
    Ok(RootSystem {
        spec,
        cartan,
        positive_roots,
        rho,
        symmetrizer: sym,
        weyl_order,
        det_cartan,
        rank_cap: DEFAULT_RANK_CAP,
        cartan_q,
        cartan_inv,
        gram,
        root_coords,
        weyl_cache: OnceLock::new(),
        mult_cache: Mutex::new(HashMap::new()),
    })
}

impl RootSystem {
    pub fn new(spec: &str) -> Result<Self> {
        build_root_system(spec.parse()?)
    }

    pub fn with_rank_cap(mut self, cap: usize) -> Self {
        self.rank_cap = cap;
        self.weyl_cache = OnceLock::new();
        self
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn cartan_matrix(&self) -> &Matrix {
        &self.cartan_q
    }

    pub fn cartan_inverse(&self) -> &Matrix {
        &self.cartan_inv
    }

    /// Simple-root coordinates of the positive roots, aligned with `positive_roots`.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan.iter().map(|row| row[i]).collect::<Vec<i64>>())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    /// Coordinates `c` of `lambda = sum c_i alpha_i`; `c_i` is the pairing with the fundamental coweight `omega_i^vee`.
    pub fn root_coordinates(&self, lambda: &Weight) -> Vec<Q> {
        linalg::mat_vec(&self.cartan_inv, &lambda.coords)
    }

    /// Fundamental-weight coordinates of `sum c_i alpha_i`.
    pub fn from_root_coordinates(&self, c: &[Q]) -> Weight {
        Weight::new(linalg::mat_vec(&self.cartan_q, c))
    }

    /// The invariant form normalized so long roots have squared length 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let gb = linalg::mat_vec(&self.gram, &b.coords);
        linalg::dot(&a.coords, &gb)
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: w.rank() });
        }
        Ok(())
    }

    /// `lambda <= mu` in the dominance order: `mu - lambda` is a nonnegative integer combination of simple roots.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> Result<bool> {
        self.check_rank(lambda)?;
        self.check_rank(mu)?;
        for w in [lambda, mu] {
            if !w.is_integral() {
                return Err(Error::NotIntegral(w.to_string()));
            }
        }
        let c = self.root_coordinates(&(mu - lambda));
        Ok(c.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    /// Sum of root coordinates; strictly increasing along the dominance order.
    pub fn height(&self, lambda: &Weight) -> Q {
        self.root_coordinates(lambda).into_iter().fold(Q::zero(), |a, b| a + b)
    }

    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        self.root_coordinates(lambda).iter().all(|c| c.is_integer())
    }

    /// `alpha(x)` for every positive root, as exact rationals.
    pub fn root_pairings(&self, x: &CoweightVector) -> Vec<Q> {
        self.positive_roots.iter().map(|a| x.pairing(a)).collect()
    }

    /// Membership in the coweight lattice: every simple root pairs integrally.
    pub fn in_coweight_lattice(&self, x: &CoweightVector) -> bool {
        (0..self.rank()).all(|j| x.pairing(&self.simple_root(j)).is_integer())
    }
}
