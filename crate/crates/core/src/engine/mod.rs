//! The p-adic cohomology engine.
//!
//! Each eigenspace `H^1_j` of the cover is computed separately: a basis of
//! twisted logarithmic forms, pole reduction modulo exact forms, the
//! semilinear `p`-power Frobenius step `H^1_j -> H^1_{nu(j)}`, its
//! composition to the linear `q`-power Frobenius, and finally integral
//! characteristic polynomials and the zeta function.

use alloc::vec::Vec;

use crate::arith::field::FieldSpec;
use crate::arith::fpoly::{self, Factorization, FqPoly};
use crate::error::{Error, Result};

pub mod approx;
pub mod charpoly;
pub mod cyclo;
pub mod euler;
pub mod frobenius;
pub mod matrix;
pub mod qpoly;
pub mod reduce;
pub mod slice;
pub mod zeta;

pub use charpoly::{char_poly_int, CharPoly};
pub use euler::{modp_euler, EulerData};
pub use frobenius::{frobenius_p_step, frobenius_q, FrobeniusMatrix};
pub use reduce::{h1_basis, reduce_form, Eigenspace, Form};
pub use zeta::{zeta, ZetaResult};

/// Working precision request.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Precision {
    #[default]
    Auto,
    Fixed(u32),
}

/// How the polynomial `Pi` is lifted to characteristic zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LiftKind {
    /// Coefficient-wise Teichmuller lifts of the irreducible factors.
    #[default]
    Teichmuller,
    /// Digits in `[0, p)`; a different but equally valid lift.
    Naive,
}

/// The cover `Xi^t * Pi = 1` of `P^1 - {zeros of Pi, infinity}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    field: FieldSpec,
    t: u64,
    pi: FqPoly,
    factorization: Factorization,
    precision: Precision,
    lift: LiftKind,
}

impl CoverSpec {
    pub fn new(field: &FieldSpec, t: u64, pi: FqPoly) -> Result<Self> {
        let p = field.p();
        if t == 0 || t.is_multiple_of(p) {
            return Err(Error::PDividesT { p, t });
        }
        let q1 = field.order() - 1;
        if !q1.is_multiple_of(t) {
            return Err(Error::OrderDoesNotDivide { t, q_minus_one: q1 });
        }
        let pi = fpoly::trimmed(pi);
        if fpoly::degree(&pi).unwrap_or(0) == 0 {
            return Err(Error::ConstantPi);
        }
        let factorization = fpoly::factor(field, &pi);
        Ok(CoverSpec {
            field: field.clone(),
            t,
            pi,
            factorization,
            precision: Precision::Auto,
            lift: LiftKind::Teichmuller,
        })
    }

    /// Builds `Pi` from integer coefficients (ascending, reduced mod `p`).
    pub fn from_ints(field: &FieldSpec, t: u64, coeffs: &[i64]) -> Result<Self> {
        let pi = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, t, pi)
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn with_lift(mut self, lift: LiftKind) -> Self {
        self.lift = lift;
        self
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn pi(&self) -> &FqPoly {
        &self.pi
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn lift(&self) -> LiftKind {
        self.lift
    }

    pub fn degree(&self) -> usize {
        self.pi.len() - 1
    }

    /// Degree of the radical of `Pi`.
    pub fn radical_degree(&self) -> usize {
        self.factorization.factors.iter().map(|(f, _)| f.len() - 1).sum()
    }

    /// Multiplicities `e_l` of the distinct irreducible factors.
    pub fn multiplicities(&self) -> Vec<u32> {
        self.factorization.factors.iter().map(|(_, e)| *e).collect()
    }
}
