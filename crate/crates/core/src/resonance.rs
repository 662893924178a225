//! Resonant Lusztig data for G_2 and their organization into families.
//!
//! A datum is resonant when m_3 = m_5, the bounding data s_i stay ≥ −1
//! away from positions 3 and 4, and s_3 = s_4 is a non-positive even
//! number −2k.  Each resonant datum carries a five-row array together
//! with a decoration k, raising operators e_1, e_2 and lowering operators
//! f_1, f_2 act on these arrays, and the orbit of a datum under the
//! lowering operators applied to its head is its resonant family.  Sums
//! of the integral over families that miss the crystal vanish, which is
//! the cancellation mechanism behind the combinatorial identities in
//! [`crate::tokuyama`].

use std::collections::BTreeSet;

use crate::exactpoly::QScalar;
use crate::g2eval::mv_integral;
use crate::lusztig::ToricChart;

/// Errors from resonance bookkeeping.
#[derive(Debug, thiserror::Error)]
pub enum ResonanceError {
    #[error("datum {0:?} is not resonant")]
    NotResonant(Vec<i64>),
    #[error("expected a G_2 chart with six positions")]
    WrongChart,
}

/// The array attached to a resonant datum: the top row
/// (m_2, m_3, m_4, m_5, m_6), the middle row (s_2+1, s_6+1, s_5+1), and
/// the decoration k defined by s_3 = s_4 = −2k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceArray {
    pub top: [i64; 5],
    pub mid: [i64; 3],
    pub decoration: i64,
}

impl ResonanceArray {
    /// The coroot weight a + 6b + 2c + d of the array, equal to the
    /// α_1∨-coordinate of the datum's coweight.
    pub fn kappa(&self) -> i64 {
        let [a, b, c, _, d] = self.top;
        a + 6 * b + 2 * c + d
    }
}

/// A resonant family: the head datum, every member reachable from it by
/// the lowering operators, and their shared coweight.
#[derive(Clone, Debug)]
pub struct ResonantFamily {
    pub head: Vec<i64>,
    pub members: Vec<Vec<i64>>,
    /// Shared coweight of every member, in simple-coroot coordinates.
    pub weight: Vec<i64>,
    /// True when some member has decoration 0, i.e. the family meets
    /// the crystal.
    pub lambda_relevant: bool,
    /// True when the head has m_2 = m_6 = 0, so every member satisfies
    /// m_2 = m_6 as well as m_3 = m_5.
    pub totally_resonant: bool,
}

impl ResonantFamily {
    /// The members outside the crystal (decoration > 0).
    pub fn interior<'a>(
        &'a self,
        chart: &'a ToricChart,
        lambda: &'a [i64],
    ) -> impl Iterator<Item = &'a Vec<i64>> {
        self.members.iter().filter(move |m| {
            array_of(chart, lambda, m).map(|a| a.decoration > 0).unwrap_or(false)
        })
    }
}

/// Whether m is a resonant datum for this lambda: m ≥ 0, m_3 = m_5,
/// s_i ≥ −1 for i ∉ {3, 4}, and s_3 = s_4 ≤ 0 even.
pub fn is_resonant(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> bool {
    if m.len() != 6 || m.iter().any(|&x| x < 0) || m[2] != m[4] {
        return false;
    }
    let s = chart.bounding_data(lambda, m);
    s[0] >= -1
        && s[1] >= -1
        && s[4] >= -1
        && s[5] >= -1
        && s[2] == s[3]
        && s[2] <= 0
        && s[2] % 2 == 0
}

/// The array of a resonant datum.
pub fn array_of(
    chart: &ToricChart,
    lambda: &[i64],
    m: &[i64],
) -> Result<ResonanceArray, ResonanceError> {
    if !is_resonant(chart, lambda, m) {
        return Err(ResonanceError::NotResonant(m.to_vec()));
    }
    let s = chart.bounding_data(lambda, m);
    Ok(ResonanceArray {
        top: [m[1], m[2], m[3], m[4], m[5]],
        mid: [s[1] + 1, s[5] + 1, s[4] + 1],
        decoration: -s[2] / 2,
    })
}

/// First raising operator: m ↦ (m_1, m_2−1, m_3, m_4+1, m_5, m_6−1),
/// defined when min{m_2, m_6} > 0.
pub fn raise_1(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> Option<Vec<i64>> {
    if m[1].min(m[5]) == 0 {
        return None;
    }
    let out = vec![m[0], m[1] - 1, m[2], m[3] + 1, m[4], m[5] - 1];
    debug_assert!(is_resonant(chart, lambda, &out));
    Some(out)
}

/// Second raising operator: m ↦ (m_1, m_2, m_3−1, m_4+3, m_5−1, m_6),
/// defined when m_3 > 0.
pub fn raise_2(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> Option<Vec<i64>> {
    if m[2] == 0 {
        return None;
    }
    let out = vec![m[0], m[1], m[2] - 1, m[3] + 3, m[4] - 1, m[5]];
    debug_assert!(is_resonant(chart, lambda, &out));
    Some(out)
}

/// First lowering operator: m ↦ (m_1, m_2+1, m_3, m_4−1, m_5, m_6+1),
/// defined when m_4 > 0, s_6 ≥ 0, and the decoration is positive.
pub fn lower_1(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> Option<Vec<i64>> {
    let arr = array_of(chart, lambda, m).ok()?;
    if m[3] == 0 || arr.mid[1] == 0 || arr.decoration == 0 {
        return None;
    }
    let out = vec![m[0], m[1] + 1, m[2], m[3] - 1, m[4], m[5] + 1];
    debug_assert!(is_resonant(chart, lambda, &out));
    Some(out)
}

/// Second lowering operator: m ↦ (m_1, m_2, m_3+1, m_4−3, m_5+1, m_6),
/// defined when m_4 ≥ 3, s_2 ≥ 0, s_5 ≥ 0, and the decoration is
/// positive.
pub fn lower_2(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> Option<Vec<i64>> {
    let arr = array_of(chart, lambda, m).ok()?;
    if m[3] < 3 || arr.mid[0] == 0 || arr.mid[2] == 0 || arr.decoration == 0 {
        return None;
    }
    let out = vec![m[0], m[1], m[2] + 1, m[3] - 3, m[4] + 1, m[5]];
    debug_assert!(is_resonant(chart, lambda, &out));
    Some(out)
}

/// Maximum number of times an operator applies to m.
fn max_power(
    chart: &ToricChart,
    lambda: &[i64],
    m: &[i64],
    op: fn(&ToricChart, &[i64], &[i64]) -> Option<Vec<i64>>,
) -> i64 {
    let mut cur = m.to_vec();
    let mut n = 0;
    while let Some(next) = op(chart, lambda, &cur) {
        cur = next;
        n += 1;
    }
    n
}

/// Number of times e_1 applies.
pub fn epsilon_1(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> i64 {
    max_power(chart, lambda, m, raise_1)
}

/// Number of times e_2 applies.
pub fn epsilon_2(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> i64 {
    max_power(chart, lambda, m, raise_2)
}

/// Number of times f_1 applies.
pub fn phi_1(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> i64 {
    max_power(chart, lambda, m, lower_1)
}

/// Number of times f_2 applies.
pub fn phi_2(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> i64 {
    max_power(chart, lambda, m, lower_2)
}

/// The head of the family of m: the result of applying both raising
/// operators until neither applies.  The operators commute, so the order
/// does not matter.
pub fn head_of(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> Vec<i64> {
    let mut cur = m.to_vec();
    loop {
        if let Some(next) = raise_2(chart, lambda, &cur) {
            cur = next;
        } else if let Some(next) = raise_1(chart, lambda, &cur) {
            cur = next;
        } else {
            return cur;
        }
    }
}

/// The resonant family of m: the closure of its head under the lowering
/// operators.
pub fn family_of(
    chart: &ToricChart,
    lambda: &[i64],
    m: &[i64],
) -> Result<ResonantFamily, ResonanceError> {
    if !is_resonant(chart, lambda, m) {
        return Err(ResonanceError::NotResonant(m.to_vec()));
    }
    let head = head_of(chart, lambda, m);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = vec![head.clone()];
    while let Some(cur) = queue.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        for op in [lower_1, lower_2] {
            if let Some(next) = op(chart, lambda, &cur) {
                queue.push(next);
            }
        }
    }
    let weight = chart.weight_of(&head);
    let lambda_relevant = seen
        .iter()
        .any(|n| array_of(chart, lambda, n).map(|a| a.decoration == 0).unwrap_or(false));
    let totally_resonant = head[1] == 0 && head[5] == 0;
    Ok(ResonantFamily {
        head,
        members: seen.into_iter().collect(),
        weight,
        lambda_relevant,
        totally_resonant,
    })
}

/// Sum of the plain integral over every member of a family.  All members
/// share one coweight, so the sum is a single scalar at that coweight.
pub fn family_sum(
    chart: &ToricChart,
    lambda: &[i64],
    family: &ResonantFamily,
) -> QScalar {
    let mut total = QScalar::zero();
    for m in &family.members {
        let c = mv_integral(chart, lambda, m).expect("dominant lambda");
        assert_eq!(c.weight, family.weight, "family member changed weight");
        total = total.add(&c.coefficient);
    }
    total
}

/// All resonant families for lambda whose head has decoration between 1
/// and `decoration_cap`.  Heads are data with m_3 = m_5 = 0 and
/// min{m_2, m_6} = 0; the resonance conditions then force
/// m_4 = λ_2 + m_6 + 2k and bound the remaining coordinates.
pub fn enumerate_families(
    chart: &ToricChart,
    lambda: &[i64],
    decoration_cap: i64,
) -> Vec<ResonantFamily> {
    let mut out = Vec::new();
    for m6 in 0..=lambda[0] + 1 {
        for m2 in 0..=lambda[1] + m6 + 1 {
            if m2 > 0 && m6 > 0 {
                continue;
            }
            for k in 1..=decoration_cap {
                let m4 = lambda[1] + m6 + 2 * k;
                for m1 in 0..=lambda[1] + m6 - m2 + 1 {
                    let head = vec![m1, m2, 0, m4, 0, m6];
                    if !is_resonant(chart, lambda, &head) {
                        continue;
                    }
                    if raise_1(chart, lambda, &head).is_some()
                        || raise_2(chart, lambda, &head).is_some()
                    {
                        continue;
                    }
                    out.push(family_of(chart, lambda, &head).expect("head is resonant"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanDatum, Series};

    fn g2_chart() -> ToricChart {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        ToricChart::new(&g2, &[1, 0, 1, 0, 1, 0]).unwrap()
    }

    #[test]
    fn golden_array_and_head() {
        let chart = g2_chart();
        let lambda = [0i64, 2];
        let m = [0i64, 0, 2, 2, 2, 0];
        let arr = array_of(&chart, &lambda, &m).unwrap();
        assert_eq!(arr.top, [0, 2, 2, 2, 0]);
        assert_eq!(arr.mid, [1, 1, 1]);
        assert_eq!(arr.decoration, 1);
        assert_eq!(arr.kappa(), 16);
        assert_eq!(chart.weight_of(&m)[0], 16);
        let head = head_of(&chart, &lambda, &m);
        assert_eq!(head, vec![0, 0, 0, 8, 0, 0]);
        let arr_h = array_of(&chart, &lambda, &head).unwrap();
        assert_eq!(arr_h.decoration, 3);
    }

    fn resonant_box(chart: &ToricChart, lambda: &[i64], hi: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for m1 in 0..=hi {
            for m2 in 0..=hi {
                for m3 in 0..=hi {
                    for m4 in 0..=2 * hi {
                        for m6 in 0..=hi {
                            let m = vec![m1, m2, m3, m4, m3, m6];
                            if is_resonant(chart, lambda, &m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn operators_are_mutually_inverse() {
        let chart = g2_chart();
        let lambda = [1i64, 2];
        for m in resonant_box(&chart, &lambda, 4) {
            if let Some(up) = raise_1(&chart, &lambda, &m) {
                assert_eq!(lower_1(&chart, &lambda, &up), Some(m.clone()), "m={m:?}");
            }
            if let Some(up) = raise_2(&chart, &lambda, &m) {
                assert_eq!(lower_2(&chart, &lambda, &up), Some(m.clone()), "m={m:?}");
            }
            if let Some(down) = lower_1(&chart, &lambda, &m) {
                assert_eq!(raise_1(&chart, &lambda, &down), Some(m.clone()), "m={m:?}");
            }
            if let Some(down) = lower_2(&chart, &lambda, &m) {
                assert_eq!(raise_2(&chart, &lambda, &down), Some(m.clone()), "m={m:?}");
            }
        }
    }

    #[test]
    fn raising_operators_commute() {
        let chart = g2_chart();
        let lambda = [1i64, 2];
        for m in resonant_box(&chart, &lambda, 4) {
            let a = raise_1(&chart, &lambda, &m)
                .and_then(|n| raise_2(&chart, &lambda, &n));
            let b = raise_2(&chart, &lambda, &m)
                .and_then(|n| raise_1(&chart, &lambda, &n));
            if a.is_some() && b.is_some() {
                assert_eq!(a, b, "m={m:?}");
            }
        }
    }

    #[test]
    fn crystal_weight_axiom() {
        // φ_i − ε_i is the i-th coordinate of the sl_2-weight; at the
        // head ε_i = 0 and the weight is (s_6+1, min{s_2, s_5}+1).
        let chart = g2_chart();
        let lambda = [1i64, 1];
        for m in resonant_box(&chart, &lambda, 4) {
            let head = head_of(&chart, &lambda, &m);
            let s = chart.bounding_data(&lambda, &head);
            assert_eq!(epsilon_1(&chart, &lambda, &head), 0);
            assert_eq!(epsilon_2(&chart, &lambda, &head), 0);
            let arr = array_of(&chart, &lambda, &head).unwrap();
            if arr.decoration > s[1].min(s[4]) + s[5] + 2 {
                // Deep enough that the decoration never truncates the
                // lowering strings.
                assert_eq!(phi_1(&chart, &lambda, &head), s[5] + 1, "head={head:?}");
                assert_eq!(
                    phi_2(&chart, &lambda, &head),
                    s[1].min(s[4]) + 1,
                    "head={head:?}"
                );
            }
        }
    }

    #[test]
    fn family_members_share_weight_and_invariants() {
        let chart = g2_chart();
        let lambda = [1i64, 2];
        for fam in enumerate_families(&chart, &lambda, 4) {
            let s_head = chart.bounding_data(&lambda, &fam.head);
            for m in &fam.members {
                assert!(is_resonant(&chart, &lambda, m));
                assert_eq!(chart.weight_of(m), fam.weight);
                assert_eq!(m[0], fam.head[0], "m_1 varies in family");
                let s = chart.bounding_data(&lambda, m);
                assert_eq!(s[0], s_head[0], "s_1 varies in family");
                assert_eq!(head_of(&chart, &lambda, m), fam.head);
            }
        }
    }

    #[test]
    fn disjoint_family_is_a_full_grid() {
        let chart = g2_chart();
        let lambda = [0i64, 1];
        let mut checked = 0;
        for fam in enumerate_families(&chart, &lambda, 6) {
            if fam.lambda_relevant {
                continue;
            }
            let s = chart.bounding_data(&lambda, &fam.head);
            let arr = array_of(&chart, &lambda, &fam.head).unwrap();
            assert!(
                arr.decoration > s[1].min(s[4]) + s[5] + 2,
                "head={:?}",
                fam.head
            );
            let expected = (s[5] + 2) * (s[1].min(s[4]) + 2);
            assert_eq!(fam.members.len() as i64, expected, "head={:?}", fam.head);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn disjoint_families_sum_to_zero() {
        let chart = g2_chart();
        for lambda in [[0i64, 1], [1, 0], [1, 1], [0, 2], [2, 1]] {
            for fam in enumerate_families(&chart, &lambda, 5) {
                if fam.lambda_relevant {
                    continue;
                }
                let total = family_sum(&chart, &lambda, &fam);
                assert!(total.is_zero(), "lambda={lambda:?}, head={:?}", fam.head);
            }
        }
    }

    #[test]
    fn enumeration_covers_every_decorated_datum() {
        // Every resonant datum with positive decoration in a search box
        // belongs to exactly one enumerated family.
        let chart = g2_chart();
        let lambda = [1i64, 1];
        let fams = enumerate_families(&chart, &lambda, 8);
        let mut member_to_fam: std::collections::BTreeMap<Vec<i64>, usize> =
            std::collections::BTreeMap::new();
        for (i, fam) in fams.iter().enumerate() {
            for m in &fam.members {
                let prev = member_to_fam.insert(m.clone(), i);
                assert!(prev.is_none(), "member {m:?} in two families");
            }
        }
        for m in resonant_box(&chart, &lambda, 5) {
            let arr = array_of(&chart, &lambda, &m).unwrap();
            let head = head_of(&chart, &lambda, &m);
            let head_deco = array_of(&chart, &lambda, &head).unwrap().decoration;
            if arr.decoration > 0 && head_deco <= 8 {
                assert!(member_to_fam.contains_key(&m), "m={m:?} not covered");
            }
        }
    }
}
