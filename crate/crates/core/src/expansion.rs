//! Symbolic expansion of powers of the radial element over the sphere
//! basis.
//!
//! Powers of G decompose as G^n = sum_k c_k X_k, where X_k is the sum of
//! all reduced words of length k. The sphere products
//!
//! ```text
//! X_1 X_1 = X_2 + 2N e
//! X_1 X_n = X_{n+1} + (2N-1) X_{n-1}    (n >= 2)
//! ```
//!
//! turn one further multiplication by G = X_1 into a linear update of the
//! coefficient vector, so G^n is reachable in O(n^2) integer operations
//! instead of an exponentially large word-level convolution. Every
//! coefficient is a nonnegative integer, c_n = 1, and c_k = 0 unless k and
//! n have the same parity.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{sphere_words, AlgebraElement, TermLimit};
use crate::error::{Error, Result};
use crate::word::{count_words_of_length, GroupSpec};

/// Coefficient vector of one power of the radial element: the exact
/// integers c_0..c_n with G^n = sum_k c_k X_k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadialVector {
    spec: GroupSpec,
    power: usize,
    coefficients: Vec<BigUint>,
}

impl RadialVector {
    /// The expansion of G itself: c_1 = 1.
    pub fn generating(spec: GroupSpec) -> Self {
        Self {
            spec,
            power: 1,
            coefficients: vec![BigUint::zero(), BigUint::from(1u32)],
        }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// The exponent n with G^n = sum_k c_k X_k.
    pub fn power(&self) -> usize {
        self.power
    }

    /// c_k, zero beyond the stored range.
    pub fn coefficient(&self, k: usize) -> BigUint {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// The coefficients of the live parity, ascending in k. Every one of
    /// them is positive.
    pub fn live_coefficients(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        let parity = self.power % 2;
        self.coefficients
            .iter()
            .enumerate()
            .filter(move |(k, _)| k % 2 == parity)
    }

    /// Advances the expansion of G^n to G^(n+1) by distributing each c_k
    /// through the sphere products: c_0 feeds X_1; c_1 feeds X_2 and
    /// 2N e; c_k (k >= 2) feeds X_{k+1} and (2N-1) X_{k-1}.
    pub fn step(&self) -> Self {
        let branching = self.spec.degree() - 1;
        let mut next = vec![BigUint::zero(); self.power + 2];
        for (k, c) in self.live_coefficients() {
            match k {
                0 => next[1] += c,
                1 => {
                    next[2] += c;
                    next[0] += c * self.spec.degree();
                }
                _ => {
                    next[k + 1] += c;
                    next[k - 1] += c * branching;
                }
            }
        }
        Self {
            spec: self.spec,
            power: self.power + 1,
            coefficients: next,
        }
    }

    /// Expands the vector into the explicit group-algebra element
    /// sum_k c_k X_k by enumerating every sphere of the live parity.
    ///
    /// The full support size is projected from the sphere counts first and
    /// checked against `limit` before anything is allocated.
    pub fn realize(&self, limit: TermLimit) -> Result<AlgebraElement> {
        let projected: BigUint = self
            .live_coefficients()
            .map(|(k, _)| count_words_of_length(self.spec, k))
            .sum();
        if projected > BigUint::from(limit.get()) {
            return Err(Error::TermLimitExceeded {
                projected,
                limit: limit.get(),
            });
        }
        let mut terms = std::collections::HashMap::new();
        for (k, c) in self.live_coefficients() {
            let coefficient = BigRational::from_integer(BigInt::from(c.clone()));
            for word in sphere_words(self.spec, k) {
                terms.insert(word, coefficient.clone());
            }
        }
        Ok(AlgebraElement::from_map(self.spec, terms))
    }

    /// Serializes to the `radial.expansion.v1` JSON document, coefficients
    /// keyed by k in ascending order.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\"schema\":\"radial.expansion.v1\",\"N\":");
        out.push_str(&self.spec.generators().to_string());
        out.push_str(",\"n\":");
        out.push_str(&self.power.to_string());
        out.push_str(",\"coefficients\":{");
        for (i, (k, c)) in self.live_coefficients().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(&k.to_string());
            out.push_str("\":\"");
            out.push_str(&c.to_string());
            out.push('"');
        }
        out.push_str("}}");
        out
    }
}

/// Coefficient vector of G^n, computed by n-1 recurrence steps.
pub fn expand_power(spec: GroupSpec, n: usize) -> RadialVector {
    assert!(n >= 1, "expand_power requires a positive exponent");
    let mut vector = RadialVector::generating(spec);
    for _ in 1..n {
        vector = vector.step();
    }
    vector
}

/// c_j in G^n for even n (conventionally written with the letter p); j must
/// be even and at most n.
pub fn coefficient_p(spec: GroupSpec, n: usize, j: usize) -> Result<BigUint> {
    coefficient_checked(spec, n, j, 0)
}

/// c_i in G^n for odd n (conventionally written with the letter q); i must
/// be odd and at most n.
pub fn coefficient_q(spec: GroupSpec, n: usize, i: usize) -> Result<BigUint> {
    coefficient_checked(spec, n, i, 1)
}

fn coefficient_checked(spec: GroupSpec, n: usize, k: usize, parity: usize) -> Result<BigUint> {
    if n % 2 != parity {
        return Err(Error::CoefficientIndex {
            power: n,
            index: k,
            reason: if parity == 0 {
                "this accessor is for even powers"
            } else {
                "this accessor is for odd powers"
            },
        });
    }
    if k % 2 != parity {
        return Err(Error::CoefficientIndex {
            power: n,
            index: k,
            reason: "index parity differs from exponent parity",
        });
    }
    if k > n {
        return Err(Error::CoefficientIndex {
            power: n,
            index: k,
            reason: "index exceeds the exponent",
        });
    }
    Ok(expand_power(spec, n).coefficient(k))
}

/// The scalar moment tau(G^n): zero for odd n, the constant coefficient
/// c_0 for even n.
pub fn moment(spec: GroupSpec, n: usize) -> BigUint {
    assert!(n >= 1, "moment requires a positive exponent");
    if n % 2 == 1 {
        BigUint::zero()
    } else {
        expand_power(spec, n).coefficient(0)
    }
}

/// Exact support size of G^n as a word-level element: every reduced word
/// whose length is at most n and has the parity of n occurs with a
/// positive coefficient, so the size is the sum of the matching sphere
/// cardinalities. Useful for sizing a brute-force computation in advance.
pub fn power_support_size(spec: GroupSpec, n: usize) -> BigUint {
    assert!(n >= 1, "power_support_size requires a positive exponent");
    (0..=n)
        .filter(|len| len % 2 == n % 2)
        .map(|len| count_words_of_length(spec, len))
        .sum()
}

/// Moments tau(G^1)..tau(G^n_max) from a single recurrence sweep.
pub fn moment_series(spec: GroupSpec, n_max: usize) -> MomentTable {
    let mut rows = Vec::with_capacity(n_max);
    let mut vector = RadialVector::generating(spec);
    for n in 1..=n_max {
        if n > 1 {
            vector = vector.step();
        }
        let value = if n % 2 == 1 {
            BigUint::zero()
        } else {
            vector.coefficient(0)
        };
        rows.push((n, value));
    }
    MomentTable { spec, rows }
}

/// Table of scalar moments for n = 1..=n_max.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentTable {
    spec: GroupSpec,
    rows: Vec<(usize, BigUint)>,
}

impl MomentTable {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn rows(&self) -> &[(usize, BigUint)] {
        &self.rows
    }

    /// CSV with header `n,moment` and one row per exponent.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("n,moment\n");
        for (n, value) in &self.rows {
            out.push_str(&n.to_string());
            out.push(',');
            out.push_str(&value.to_string());
            out.push('\n');
        }
        out
    }

    /// Serializes to the `radial.moments.v1` JSON document.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\"schema\":\"radial.moments.v1\",\"N\":");
        out.push_str(&self.spec.generators().to_string());
        out.push_str(",\"rows\":[");
        for (i, (n, value)) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"n\":");
            out.push_str(&n.to_string());
            out.push_str(",\"value\":\"");
            out.push_str(&value.to_string());
            out.push_str("\"}");
        }
        out.push_str("]}");
        out
    }
}
