//! Compression onto the cyclic subalgebra generated by the commutator of
//! the generators.
//!
//! Let h = g_1 g_2 .. g_N g_1^-1 g_2^-1 .. g_N^-1, a reduced word of
//! length 2N of infinite order. The powers of h span a commutative
//! subalgebra, and the map keeping exactly the coefficients supported on
//! those powers is the trace-preserving conditional expectation onto it.
//! Images are Laurent polynomials in h.
//!
//! For powers of the radial element the expectation has a closed form: a
//! sphere X_m meets the powers of h exactly in h^{+-p} when m = 2Np, so
//!
//! ```text
//! E(G^n) = sum_{p >= 1, 2Np <= n} c_{2Np} (h^p + h^-p) + c_0 h^0
//! ```
//!
//! with the c_k taken from the expansion of G^n. Odd powers vanish.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::expansion::{expand_power, RadialVector};
use crate::word::{GroupSpec, Letter, ReducedWord};

/// A group spec together with its distinguished commutator word h and the
/// inverse of h, precomputed for pattern matching.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutatorSpec {
    spec: GroupSpec,
    h: ReducedWord,
    h_inverse: ReducedWord,
}

impl CommutatorSpec {
    pub fn new(spec: GroupSpec) -> Self {
        let mut letters = Vec::with_capacity(spec.degree() as usize);
        for index in 1..=spec.generators() as u8 {
            letters.push(Letter::generator(index));
        }
        for index in 1..=spec.generators() as u8 {
            letters.push(Letter::inverse_generator(index));
        }
        let h = ReducedWord::from_reduced_parts(spec, letters);
        let h_inverse = h.invert();
        Self { spec, h, h_inverse }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// The word h itself.
    pub fn commutator(&self) -> &ReducedWord {
        &self.h
    }

    /// h^k as a reduced word. Powers of h never cancel at the block
    /// junctions, so this is plain repetition; |h^k| = 2N |k|.
    pub fn commutator_power(&self, exponent: i64) -> ReducedWord {
        if exponent == 0 {
            return ReducedWord::identity(self.spec);
        }
        let base = if exponent > 0 {
            &self.h
        } else {
            &self.h_inverse
        };
        let letters = base.letters().repeat(exponent.unsigned_abs() as usize);
        ReducedWord::from_reduced_parts(self.spec, letters)
    }
}

/// Decides whether a reduced word is a power of h, and which one.
///
/// A power h^k has length 2N|k| and consists of |k| repetitions of the
/// letters of h (k > 0) or of h^-1 (k < 0), so the test is a length check
/// plus one blockwise comparison. Words over a different group spec are
/// never powers of this h.
pub fn power_of_commutator(word: &ReducedWord, cspec: &CommutatorSpec) -> Option<i64> {
    if word.spec() != cspec.spec {
        return None;
    }
    if word.is_identity() {
        return Some(0);
    }
    let block = cspec.spec.degree() as usize;
    if word.len() % block != 0 {
        return None;
    }
    let repetitions = (word.len() / block) as i64;
    let matches = |pattern: &ReducedWord| {
        word.letters()
            .iter()
            .zip(pattern.letters().iter().cycle())
            .all(|(a, b)| a == b)
    };
    if matches(&cspec.h) {
        Some(repetitions)
    } else if matches(&cspec.h_inverse) {
        Some(-repetitions)
    } else {
        None
    }
}

/// A Laurent polynomial in h with exact rational coefficients: the image
/// of the conditional expectation. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentInH {
    cspec: CommutatorSpec,
    coefficients: BTreeMap<i64, BigRational>,
}

impl LaurentInH {
    pub fn zero(cspec: CommutatorSpec) -> Self {
        Self {
            cspec,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn from_coefficients<I>(cspec: CommutatorSpec, pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut coefficients = BTreeMap::new();
        for (exponent, coefficient) in pairs {
            if coefficient.is_zero() {
                continue;
            }
            *coefficients
                .entry(exponent)
                .or_insert_with(BigRational::zero) += coefficient;
        }
        coefficients.retain(|_, c| !c.is_zero());
        Self {
            cspec,
            coefficients,
        }
    }

    pub fn cspec(&self) -> &CommutatorSpec {
        &self.cspec
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient of h^exponent, zero when absent.
    pub fn coefficient(&self, exponent: i64) -> BigRational {
        self.coefficients
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coefficients.iter().map(|(k, c)| (*k, c))
    }

    /// The involution h^k -> h^-k extended linearly; on expectations of
    /// self-adjoint elements it acts as the identity.
    pub fn involution(&self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .map(|(exponent, coefficient)| (-exponent, coefficient.clone()))
            .collect();
        Self {
            cspec: self.cspec.clone(),
            coefficients,
        }
    }

    /// Multiplication by h^delta: shifts every exponent by delta.
    pub fn shifted(&self, delta: i64) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .map(|(exponent, coefficient)| (exponent + delta, coefficient.clone()))
            .collect();
        Self {
            cspec: self.cspec.clone(),
            coefficients,
        }
    }

    /// Embeds back into the group algebra as sum_k c_k h^k.
    pub fn to_element(&self) -> AlgebraElement {
        let pairs = self
            .coefficients
            .iter()
            .map(|(exponent, coefficient)| {
                (self.cspec.commutator_power(*exponent), coefficient.clone())
            })
            .collect::<Vec<_>>();
        AlgebraElement::from_terms(self.cspec.spec, pairs)
            .expect("powers of h share the ambient spec")
    }

    /// Serializes one operator-valued moment to the `radial.opval.v1` JSON
    /// document, exponents ascending.
    pub fn to_moment_json(&self, n: usize) -> String {
        let mut out = String::from("{\"schema\":\"radial.opval.v1\",\"N\":");
        out.push_str(&self.cspec.spec.generators().to_string());
        out.push_str(",\"n\":");
        out.push_str(&n.to_string());
        out.push_str(",\"laurent\":{");
        for (i, (exponent, coefficient)) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(&exponent.to_string());
            out.push_str("\":\"");
            out.push_str(&coefficient.to_string());
            out.push('"');
        }
        out.push_str("}}");
        out
    }
}

/// The conditional expectation: keeps exactly the terms whose word is a
/// power of h.
pub fn expect(x: &AlgebraElement, cspec: &CommutatorSpec) -> Result<LaurentInH> {
    if x.spec() != cspec.spec {
        return Err(x.spec().mismatch(&cspec.spec));
    }
    let mut coefficients = BTreeMap::new();
    for (word, coefficient) in x.iter_terms() {
        if let Some(exponent) = power_of_commutator(word, cspec) {
            // distinct words give distinct exponents, so plain insert
            coefficients.insert(exponent, coefficient.clone());
        }
    }
    Ok(LaurentInH {
        cspec: cspec.clone(),
        coefficients,
    })
}

/// E(G^n) in closed form, reading the needed coefficients off the
/// recurrence instead of expanding any sphere. Odd powers are zero.
pub fn opval_moment_closed(cspec: &CommutatorSpec, n: usize) -> LaurentInH {
    assert!(n >= 1, "opval_moment_closed requires a positive exponent");
    if n % 2 == 1 {
        return LaurentInH::zero(cspec.clone());
    }
    laurent_from_vector(cspec, &expand_power(cspec.spec, n))
}

pub(crate) fn laurent_from_vector(cspec: &CommutatorSpec, vector: &RadialVector) -> LaurentInH {
    debug_assert_eq!(vector.power() % 2, 0);
    let block = cspec.spec.degree() as usize;
    let mut coefficients = BTreeMap::new();
    let constant = vector.coefficient(0);
    if !constant.is_zero() {
        coefficients.insert(0, BigRational::from_integer(BigInt::from(constant)));
    }
    let mut p = 1i64;
    while block * p as usize <= vector.power() {
        let c = BigRational::from_integer(BigInt::from(vector.coefficient(block * p as usize)));
        if !c.is_zero() {
            coefficients.insert(p, c.clone());
            coefficients.insert(-p, c);
        }
        p += 1;
    }
    LaurentInH {
        cspec: cspec.clone(),
        coefficients,
    }
}

/// Table of operator-valued moments for n = 1..=n_max.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpValMomentTable {
    rows: Vec<(usize, LaurentInH)>,
}

impl OpValMomentTable {
    pub fn rows(&self) -> &[(usize, LaurentInH)] {
        &self.rows
    }
}

/// E(G^1)..E(G^n_max) from a single recurrence sweep.
pub fn opval_moment_series(cspec: &CommutatorSpec, n_max: usize) -> OpValMomentTable {
    let mut rows = Vec::with_capacity(n_max);
    let mut vector = RadialVector::generating(cspec.spec);
    for n in 1..=n_max {
        if n > 1 {
            vector = vector.step();
        }
        let value = if n % 2 == 1 {
            LaurentInH::zero(cspec.clone())
        } else {
            laurent_from_vector(cspec, &vector)
        };
        rows.push((n, value));
    }
    OpValMomentTable { rows }
}
