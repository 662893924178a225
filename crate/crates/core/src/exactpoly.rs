//! Exact multivariate Laurent-polynomial arithmetic over ℤ, scalars in the
//! formal symbol q⁻¹, and group-algebra elements over a coweight lattice.
//!
//! Everything here is bit-exact: coefficients are arbitrary-precision
//! integers and q⁻¹ is a formal symbol, never a float. Exponent vectors are
//! stored densely; the variable sets in scope are small (N ≤ 6).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Errors from exact arithmetic.
#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("expected a monomial, found {0} terms")]
    NotMonomial(usize),
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

/// A Laurent polynomial in a fixed, named variable set with integer
/// exponents and arbitrary-precision integer coefficients.
///
/// Invariant: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial in the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The constant 1.
    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, 1)
    }

    /// A single monomial `c · Π xᵢ^{exps[i]}`.
    pub fn monomial(vars: &[&str], exps: &[i64], c: impl Into<BigInt>) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    /// The variable `name` as a polynomial, raised to `exp`.
    pub fn var_pow(vars: &[&str], name: &str, exp: i64) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0i64; vars.len()];
        exps[idx] = exp;
        Self::monomial(vars, &exps, 1)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over `(exponent vector, coefficient)` pairs in a canonical
    /// (lexicographic) order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, BigInt>, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other).unwrap();
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other).unwrap();
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, e, c1 * c2);
            }
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * &c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// True if this is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The unique `(exponents, coefficient)` pair of a monomial.
    pub fn as_monomial(&self) -> Result<(Vec<i64>, BigInt), PolyError> {
        if self.terms.len() != 1 {
            return Err(PolyError::NotMonomial(self.terms.len()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok((e.clone(), c.clone()))
    }

    /// Multiplicative inverse of a monomial with coefficient ±1.
    pub fn monomial_inverse(&self) -> Result<Self, PolyError> {
        let (e, c) = self.as_monomial()?;
        if !(c.clone().abs()).is_one() {
            return Err(PolyError::NotDivisible(format!(
                "monomial coefficient {c} is not a unit"
            )));
        }
        let inv: Vec<i64> = e.iter().map(|x| -x).collect();
        Ok(Self::monomial(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &inv,
            c,
        ))
    }

    /// Substitute `replacement` for the variable `name`. If the variable
    /// appears with a negative exponent the replacement must be an
    /// invertible monomial.
    pub fn substitute(&self, name: &str, replacement: &Self) -> Result<Self, PolyError> {
        self.check_vars(replacement)?;
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let vars_ref: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut out = Self::zero(&vars_ref);
        for (e, c) in &self.terms {
            let k = e[idx];
            let mut stripped = e.clone();
            stripped[idx] = 0;
            let base = Self::monomial(&vars_ref, &stripped, c.clone());
            let factor = if k >= 0 {
                replacement.pow(k as u32)
            } else {
                replacement.monomial_inverse()?.pow((-k) as u32)
            };
            out = out.add(&base.mul(&factor));
        }
        Ok(out)
    }

    /// Minimum exponent of each variable over all terms (zero vector if
    /// the polynomial is zero).
    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.vars.len()];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                mins.clone_from(e);
                first = false;
            } else {
                for (m, &x) in mins.iter_mut().zip(e) {
                    *m = (*m).min(x);
                }
            }
        }
        mins
    }

    /// Exact division in the Laurent ring; errors if `d` does not divide
    /// `self`. Both arguments are normalized to the polynomial ring first,
    /// where lexicographic leading-term reduction provably terminates.
    pub fn exact_divide(&self, d: &Self) -> Result<Self, PolyError> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(PolyError::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let vars_ref: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let self_min = self.min_exponents();
        let d_min = d.min_exponents();
        let lift = |p: &Self, mins: &[i64]| -> Self {
            let shift: Vec<i64> = mins.iter().map(|x| -x).collect();
            p.mul(&Self::monomial(&vars_ref, &shift, 1))
        };
        let num = lift(self, &self_min);
        let den = lift(d, &d_min);
        let (lead_e, lead_c) = den.terms.iter().next_back().unwrap();
        let mut rem = num.clone();
        let mut quo = Self::zero(&vars_ref);
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().unwrap();
            let (re, rc) = (re.clone(), rc.clone());
            let shift: Vec<i64> = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if shift.iter().any(|&x| x < 0) {
                return Err(PolyError::NotDivisible(format!(
                    "leading monomial not divisible (shift {shift:?})"
                )));
            }
            let (q, r) = num_integer::Integer::div_rem(&rc, lead_c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible(format!(
                    "leading coefficient {rc} not divisible by {lead_c}"
                )));
            }
            let t = Self::monomial(&vars_ref, &shift, q);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(&den));
        }
        // Undo the normalization shifts.
        let back: Vec<i64> = self_min.iter().zip(&d_min).map(|(a, b)| a - b).collect();
        Ok(quo.mul(&Self::monomial(&vars_ref, &back, 1)))
    }

    /// For a monomial in the listed variables, the affine form
    /// `Σ_k exponent(vars[k]) · coefficient position k`, i.e. the valuation
    /// of the monomial when variable k has valuation m_k.
    pub fn valuation_form(&self, assignment_vars: &[&str]) -> Result<Vec<i64>, PolyError> {
        let (e, _) = self.as_monomial()?;
        assignment_vars
            .iter()
            .map(|name| {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                Ok(e[idx])
            })
            .collect()
    }

    /// Canonical sorted text form, e.g. `2*b_1*b_2^3 - b_3^-1`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if k == 1 {
                    mono.push_str(&self.vars[i]);
                } else {
                    mono.push_str(&format!("{}^{}", self.vars[i], k));
                }
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.clone().abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

/// A scalar in the formal symbol q⁻¹: a Laurent polynomial in q with
/// integer coefficients, keyed by the power of q (so q⁻¹ is exponent −1).
///
/// Invariant: no stored zero coefficients; `(1−q⁻¹)·q = q−1` exactly.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        let mut s = Self::default();
        let c = c.into();
        if !c.is_zero() {
            s.terms.insert(0, c);
        }
        s
    }

    /// `c · q^k` (use negative `k` for powers of q⁻¹).
    pub fn q_pow(k: i64, c: impl Into<BigInt>) -> Self {
        let mut s = Self::default();
        let c = c.into();
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s
    }

    /// `1 − q⁻¹`.
    pub fn one_minus_qinv() -> Self {
        Self::one().sub(&Self::q_pow(-1, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        QScalar { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let entry = terms.entry(k1 + k2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QScalar { terms }
    }

    /// Exact division (errors if not divisible).
    pub fn exact_divide(&self, d: &Self) -> Result<Self, PolyError> {
        if d.is_zero() {
            return Err(PolyError::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Degree reduction terminates because the quotient's q-degree is
        // bounded below by (lowest power of self) − (lowest power of d).
        let low_bound =
            self.terms.keys().next().unwrap() - d.terms.keys().next().unwrap();
        let (lead_k, lead_c) = d.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while !rem.is_zero() {
            let (rk, rc) = rem.terms.iter().next_back().unwrap();
            let (rk, rc) = (*rk, rc.clone());
            if rk - lead_k < low_bound {
                return Err(PolyError::NotDivisible(format!(
                    "remainder {} is not a multiple of {}",
                    rem.to_canonical_string(),
                    d.to_canonical_string()
                )));
            }
            let (q, r) = num_integer::Integer::div_rem(&rc, lead_c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible(format!(
                    "coefficient {rc} not divisible by {lead_c}"
                )));
            }
            let t = Self::q_pow(rk - lead_k, q);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        Ok(quo)
    }

    /// Canonical text form with q⁻¹ rendered as `q^-1`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.clone().abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match k {
                0 => out.push_str(&mag.to_string()),
                1 => {
                    if mag.is_one() {
                        out.push('q');
                    } else {
                        out.push_str(&format!("{mag}*q"));
                    }
                }
                _ => {
                    if mag.is_one() {
                        out.push_str(&format!("q^{k}"));
                    } else {
                        out.push_str(&format!("{mag}*q^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

/// An element of the group algebra of a coweight lattice: a finite sum of
/// formal exponentials τ^μ with `QScalar` coefficients, where μ is stored
/// as an integer coordinate vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Vec<i64>, QScalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · τ^μ`.
    pub fn monomial(mu: &[i64], c: QScalar) -> Self {
        let mut t = Self::default();
        if !c.is_zero() {
            t.terms.insert(mu.to_vec(), c);
        }
        t
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(&vec![0; rank], QScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mu: &[i64]) -> QScalar {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (mu, c) in &other.terms {
            use std::collections::btree_map::Entry;
            match terms.entry(mu.clone()) {
                Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                Entry::Occupied(mut e) => {
                    let s = e.get().add(c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        GroupAlgebraElement { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement {
            terms: self.terms.iter().map(|(mu, c)| (mu.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mu: Vec<i64> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out = out.add(&Self::monomial(&mu, c1.mul(c2)));
            }
        }
        out
    }

    /// Multiply every exponent by τ^shift.
    pub fn shift(&self, shift: &[i64]) -> Self {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| {
                    (
                        mu.iter().zip(shift).map(|(a, b)| a + b).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division; errors if `d` does not divide `self` (used to detect
    /// broken Weyl-character numerators).
    pub fn exact_divide(&self, d: &Self) -> Result<Self, PolyError> {
        if d.is_zero() {
            return Err(PolyError::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Normalize each operand so its coordinate-wise minimum exponent is
        // zero; lexicographic leading-term reduction over nonnegative
        // vectors is then well founded and termination is guaranteed.
        let rank = self.terms.keys().next().unwrap().len();
        let mins_of = |p: &Self| -> Vec<i64> {
            let mut mins = vec![i64::MAX; rank];
            for mu in p.terms.keys() {
                for (m, &x) in mins.iter_mut().zip(mu) {
                    *m = (*m).min(x);
                }
            }
            mins
        };
        let num_min = mins_of(self);
        let den_min = mins_of(d);
        let num = self.shift(&num_min.iter().map(|x| -x).collect::<Vec<_>>());
        let den = d.shift(&den_min.iter().map(|x| -x).collect::<Vec<_>>());
        let (lead_mu, lead_c) = den.terms.iter().next_back().unwrap();
        let mut rem = num.clone();
        let mut quo = Self::zero();
        while !rem.is_zero() {
            let (rmu, rc) = rem.terms.iter().next_back().unwrap();
            let (rmu, rc) = (rmu.clone(), rc.clone());
            let delta: Vec<i64> = rmu.iter().zip(lead_mu).map(|(a, b)| a - b).collect();
            if delta.iter().any(|&x| x < 0) {
                return Err(PolyError::NotDivisible(
                    "leading monomial not divisible".into(),
                ));
            }
            let q = rc.exact_divide(lead_c)?;
            let t = Self::monomial(&delta, q);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(&den));
        }
        // Undo the normalization shifts.
        let back: Vec<i64> = num_min.iter().zip(&den_min).map(|(a, b)| a - b).collect();
        Ok(quo.shift(&back))
    }

    /// Evaluate at τ = identity: the sum of all coefficients.
    pub fn evaluate_at_identity(&self) -> QScalar {
        let mut s = QScalar::zero();
        for c in self.terms.values() {
            s = s.add(c);
        }
        s
    }

    /// Canonical sorted text form.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(mu, c)| {
                let coords = mu
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                format!("({}) tau^({})", c.to_canonical_string(), coords)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}
