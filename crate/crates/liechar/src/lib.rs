//! Exact computation of simple Lie algebra characters as polynomials in the
//! fundamental characters, of the associated Calogero-Sutherland-type
//! differential operator, and of closed-form rational generating functions
//! of characters, verified symbolically against the defining differential
//! equation.
//!
//! Everything is exact: coefficients are arbitrary-precision integers, with
//! rationals appearing only transiently in solves that must clear to
//! integers. The polynomial core is generic over the coefficient ring (see
//! [`poly::Coeff`]); the concrete instantiations used throughout the crate
//! are the type aliases below.

pub mod csop;
pub mod error;
pub mod genfun;
pub mod json;
pub mod lie;
pub mod poly;
pub mod solver;
pub mod weyl;

pub use error::{Error, Result};
pub use lie::{build_algebra, dimension, eigenvalue, parse_algebra, weyl_orbit};
pub use lie::{AlgebraData, Family, Weight};
pub use poly::MultiPoly;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;

/// Laurent polynomial in the torus variables `x_1..x_r`; exponents may be
/// negative.
pub type LaurentPoly = MultiPoly<Int>;
/// Polynomial in the fundamental characters `z_1..z_r`; exponents
/// non-negative.
pub type ZPoly = MultiPoly<Int>;
/// Rational-coefficient polynomial, for intermediate solves and for
/// operators over a rescaled form.
pub type QPoly = MultiPoly<Rat>;
/// Polynomial in the auxiliary variables `t_1..t_r` whose coefficients are
/// [`ZPoly`] values.
pub type TPoly = MultiPoly<ZPoly>;

use std::collections::HashMap;
use std::sync::RwLock;

/// One algebra plus its operator and memoized characters: the working
/// context shared by the generating-function pipeline and the CLI.
///
/// All computations are pure; the caches only avoid recomputation and are
/// safe for concurrent reads with serialized writes.
pub struct Workspace {
    pub alg: AlgebraData,
    pub op: csop::CsOperator,
    char_x_cache: RwLock<HashMap<Vec<i32>, LaurentPoly>>,
    char_z_cache: RwLock<HashMap<Vec<i32>, ZPoly>>,
}

impl Workspace {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let alg = build_algebra(family, rank)?;
        Self::from_algebra(alg)
    }

    pub fn from_algebra(alg: AlgebraData) -> Result<Self> {
        let op = csop::build_cs_operator(&alg)?;
        Ok(Workspace {
            alg,
            op,
            char_x_cache: RwLock::new(HashMap::new()),
            char_z_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn parse(name: &str) -> Result<Self> {
        let (family, rank) = parse_algebra(name)?;
        Self::new(family, rank)
    }

    /// Weyl-formula character in the torus variables, memoized.
    pub fn char_x(&self, m: &Weight) -> Result<LaurentPoly> {
        if let Some(p) = self.char_x_cache.read().unwrap().get(&m.0) {
            return Ok(p.clone());
        }
        let p = weyl::char_x(&self.alg, m)?.poly;
        self.char_x_cache
            .write()
            .unwrap()
            .insert(m.0.clone(), p.clone());
        Ok(p)
    }

    /// Character as a polynomial in the fundamental characters, computed by
    /// the operator recursion, memoized.
    pub fn char_z(&self, m: &Weight) -> Result<ZPoly> {
        if let Some(p) = self.char_z_cache.read().unwrap().get(&m.0) {
            return Ok(p.clone());
        }
        let p = solver::character_z(&self.alg, &self.op, m)?.poly;
        self.char_z_cache
            .write()
            .unwrap()
            .insert(m.0.clone(), p.clone());
        Ok(p)
    }
}
