//! Deformed character identities: the Casselman–Shalika product side,
//! the crystal sums over Lusztig data with resonance-family corrections
//! for G_2, the standard-contribution sum for type A, and exact
//! verification reports.
//!
//! Every element lives in the group algebra of the coroot lattice of G
//! over ℤ[q, q⁻¹]: τ-exponents are coweights in simple-coroot
//! coordinates, the product runs over positive coroots, and the
//! character χ_λ is that of the Langlands dual group, computed by the
//! Weyl character formula acting on the coweight lattice.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactpoly::{GroupAlgebraElement, QScalar};
use crate::g2eval::{augmented, mv_integral};
use crate::linalg::{rat_int, rmat_solve, Rat};
use crate::lusztig::ToricChart;
use crate::resonance::enumerate_families;
use crate::rootsys::CartanDatum;

/// Errors from identity assembly.
#[derive(Debug, thiserror::Error)]
pub enum TokuyamaError {
    #[error("lambda must be dominant, got {0:?}")]
    NotDominant(Vec<i64>),
    #[error("character weight {0:?} is not in the coroot lattice")]
    NotACorootWeight(Vec<i64>),
    #[error("Weyl character division failed: {0}")]
    Division(String),
}

/// Exact comparison of two identity sides, with the difference kept for
/// diagnosis.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub lhs: GroupAlgebraElement,
    pub rhs: GroupAlgebraElement,
    pub equal: bool,
    pub diff: GroupAlgebraElement,
}

/// Compare two group-algebra elements exactly.
pub fn verify(lhs: &GroupAlgebraElement, rhs: &GroupAlgebraElement) -> IdentityReport {
    let diff = lhs.sub(rhs);
    IdentityReport {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        equal: diff.is_zero(),
        diff,
    }
}

/// All Weyl group elements as words in the simple reflections, paired
/// with their signs (−1)^{length}.
fn weyl_group_words(datum: &CartanDatum) -> Vec<(Vec<usize>, i64)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let id = datum.weyl_identity();
    let mut frontier = vec![(id.clone(), Vec::<usize>::new())];
    seen.insert(id);
    while let Some((w, word)) = frontier.pop() {
        let sign = if datum.length(&w) % 2 == 0 { 1 } else { -1 };
        out.push((word.clone(), sign));
        for i in 0..datum.rank {
            let next = datum.compose(&w, &datum.simple_reflection(i));
            if seen.insert(next.clone()) {
                let mut nw = word.clone();
                nw.push(i);
                frontier.push((next, nw));
            }
        }
    }
    out
}

/// Convert a coweight from fundamental-coweight (pairing) coordinates to
/// simple-coroot coordinates, failing when it is not in the coroot
/// lattice.
fn pairing_to_coroot(datum: &CartanDatum, c: &[i64]) -> Result<Vec<i64>, TokuyamaError> {
    // c_j = Σ_i x_i ⟨α_j, α_i∨⟩ = Σ_i x_i A[i][j], so solve Aᵀ x = c.
    let r = datum.rank;
    let at: Vec<Vec<Rat>> = (0..r)
        .map(|j| (0..r).map(|i| rat_int(datum.cartan[i][j])).collect())
        .collect();
    let b: Vec<Rat> = c.iter().map(|&x| rat_int(x)).collect();
    let x = rmat_solve(&at, &b).ok_or_else(|| TokuyamaError::NotACorootWeight(c.to_vec()))?;
    let mut out = Vec::with_capacity(r);
    for v in x {
        if !v.is_integer() {
            return Err(TokuyamaError::NotACorootWeight(c.to_vec()));
        }
        let digits = v.to_integer();
        out.push(i64::try_from(digits).expect("coroot coordinate fits i64"));
    }
    Ok(out)
}

/// The character of the irreducible module of the dual group with
/// highest weight λ, as a group-algebra element whose exponents are
/// coweights of G in fundamental-coweight coordinates.
pub fn weyl_character(
    datum: &CartanDatum,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(TokuyamaError::NotDominant(lambda.to_vec()));
    }
    let rho = datum.rho();
    let lam_rho: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let alt_sum = |mu: &[i64]| {
        let mut out = GroupAlgebraElement::zero();
        for (word, sign) in weyl_group_words(datum) {
            let img = datum.act_word_on_coweight(&word, mu);
            out = out.add(&GroupAlgebraElement::monomial(
                &img,
                QScalar::from_int(sign),
            ));
        }
        out
    };
    let num = alt_sum(&lam_rho);
    let den = alt_sum(&rho);
    num.exact_divide(&den)
        .map_err(|e| TokuyamaError::Division(e.to_string()))
}

/// The dual-group Weyl dimension Π_{β>0} ⟨λ+ρ, β⟩ / ⟨ρ, β⟩, where β runs
/// over the positive roots of G viewed as coroots of the dual group and
/// λ, ρ are coweights of G in pairing coordinates.
pub fn dual_weyl_dimension(datum: &CartanDatum, lambda: &[i64]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in &datum.roots[..datum.num_positive] {
        let pair = |mu: &[i64]| -> i64 { beta.iter().zip(mu).map(|(a, b)| a * b).sum() };
        let rho_pair = pair(&datum.rho());
        let lam_rho: Vec<i64> = lambda.iter().zip(datum.rho()).map(|(a, b)| a + b).collect();
        num *= BigInt::from(pair(&lam_rho));
        den *= BigInt::from(rho_pair);
    }
    assert!((&num % &den).is_zero());
    num / den
}

/// The Casselman–Shalika product side
/// `τ^{−w_0 λ} · χ_λ(τ) · Π_{α∨ > 0} (1 − q⁻¹ τ^{α∨})`
/// in simple-coroot coordinates.
pub fn product_side(
    datum: &CartanDatum,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    let chi = weyl_character(datum, lambda)?;
    let w0 = datum.longest_element();
    let w0_word = datum.reduced_word_of(&w0);
    let minus_w0_lambda: Vec<i64> = datum
        .act_word_on_coweight(&w0_word, lambda)
        .iter()
        .map(|x| -x)
        .collect();
    // Shift and convert every character exponent to coroot coordinates.
    let mut shifted = GroupAlgebraElement::zero();
    for (mu, coeff) in chi.iter_terms() {
        let total: Vec<i64> = mu
            .iter()
            .zip(&minus_w0_lambda)
            .map(|(a, b)| a + b)
            .collect();
        let coroot = pairing_to_coroot(datum, &total)?;
        shifted = shifted.add(&GroupAlgebraElement::monomial(&coroot, coeff.clone()));
    }
    let mut out = shifted;
    for beta in &datum.roots[..datum.num_positive] {
        let coroot = datum.coroot_of(beta).expect("positive root has a coroot");
        let factor = GroupAlgebraElement::one(datum.rank).sub(&GroupAlgebraElement::monomial(
            &coroot,
            QScalar::q_pow(-1, 1),
        ));
        out = out.mul(&factor);
    }
    Ok(out)
}

/// Decoration cap covering every family that can reach the crystal: a
/// relevant head lowers to decoration 0 in at most
/// (s_6 + 1) + (min{s_2, s_5} + 1) ≤ λ_1 + λ_2 + m_6 + 2 steps.
fn relevant_cap(lambda: &[i64]) -> i64 {
    2 * lambda[0] + lambda[1] + 3
}

fn family_corrections(
    chart: &ToricChart,
    lambda: &[i64],
    totally_resonant_only: bool,
) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero();
    for fam in enumerate_families(chart, lambda, relevant_cap(lambda)) {
        if !fam.lambda_relevant {
            continue;
        }
        if totally_resonant_only && !fam.totally_resonant {
            continue;
        }
        for m in fam.interior(chart, lambda) {
            let c = mv_integral(chart, lambda, m).expect("dominant lambda");
            out = out.add(&GroupAlgebraElement::monomial(&c.weight, c.coefficient));
        }
    }
    out
}

/// The crystal-only part of the first G_2 sum: Σ_{m∈B(λ+ρ)} G_1(m)τ^{wt(m)}.
pub fn g2_crystal_sum(
    chart: &ToricChart,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(TokuyamaError::NotDominant(lambda.to_vec()));
    }
    let mut out = GroupAlgebraElement::zero();
    for m in chart.enumerate_crystal(lambda) {
        let c = mv_integral(chart, lambda, &m).expect("dominant lambda");
        out = out.add(&GroupAlgebraElement::monomial(&c.weight, c.coefficient));
    }
    Ok(out)
}

/// First G_2 sum side: the crystal sum of the plain contributions plus
/// the residual contributions of every relevant family's members outside
/// the crystal.
pub fn g2_sum_v1(
    chart: &ToricChart,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    Ok(g2_crystal_sum(chart, lambda)?.add(&family_corrections(chart, lambda, false)))
}

/// Second G_2 sum side: the crystal sum of the augmented contributions
/// plus the residual corrections of the totally resonant relevant
/// families only.
pub fn g2_sum_v2(
    chart: &ToricChart,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(TokuyamaError::NotDominant(lambda.to_vec()));
    }
    let mut out = GroupAlgebraElement::zero();
    for m in chart.enumerate_crystal(lambda) {
        let c = augmented(chart, lambda, &m).expect("crystal member");
        out = out.add(&GroupAlgebraElement::monomial(&c.weight, c.coefficient));
    }
    Ok(out.add(&family_corrections(chart, lambda, true)))
}

/// The type-A standard-contribution sum over B(λ+ρ) for the
/// Gelfand–Tsetlin word: Σ_m Π_k G(s_k, m_k) · τ^{wt(m)}.
pub fn type_a_sum(
    chart: &ToricChart,
    lambda: &[i64],
) -> Result<GroupAlgebraElement, TokuyamaError> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(TokuyamaError::NotDominant(lambda.to_vec()));
    }
    let mut out = GroupAlgebraElement::zero();
    for m in chart.enumerate_crystal(lambda) {
        let s = chart.bounding_data(lambda, &m);
        let mut coeff = QScalar::one();
        for (sk, mk) in s.iter().zip(&m) {
            coeff = coeff.mul(&crate::g2eval::g_factor(*sk, *mk));
        }
        out = out.add(&GroupAlgebraElement::monomial(&chart.weight_of(&m), coeff));
    }
    Ok(out)
}

/// The Gelfand–Tsetlin word (1, 2, …, r, 1, 2, …, 1, 2, 1) in 0-based
/// letters.
pub fn gelfand_tsetlin_word(r: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(r * (r + 1) / 2);
    for start in 0..r {
        for i in 0..(r - start) {
            word.push(i);
        }
    }
    word
}
