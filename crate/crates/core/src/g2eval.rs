//! Closed-form evaluation of the G_2 integrals attached to a Lusztig
//! datum: the factor G(s, m), the helper I(a, b), the in-crystal and
//! residual contributions, and the augmented contributions obtained from
//! the right- and left-hand summation rules.

use crate::exactpoly::QScalar;
use crate::lusztig::ToricChart;

/// Errors from contribution evaluation.
#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("lambda must be dominant, got {0:?}")]
    NotDominant(Vec<i64>),
    #[error("datum {0:?} is not inside the crystal for this lambda")]
    NotInCrystal(Vec<i64>),
}

/// One evaluated contribution: its scalar, its coweight, and the case
/// flags that drove the evaluation.
#[derive(Clone, Debug)]
pub struct G2Contribution {
    pub coefficient: QScalar,
    /// Weight Σ m_k γ_k^∨ in simple-coroot coordinates.
    pub weight: Vec<i64>,
    pub in_crystal: bool,
    /// m_3 = m_5.
    pub resonant: bool,
    /// Resonant and m_2 = m_6.
    pub totally_resonant: bool,
    /// When resonant with s_3 = s_4 = −2d: the decoration d.
    pub decoration: Option<i64>,
}

/// The factor G(s, m): 1−q⁻¹ if m>0, s≥0; −q⁻¹ if m>0, s=−1; 1 if m=0,
/// s≥0; 0 otherwise.
pub fn g_factor(s: i64, m: i64) -> QScalar {
    if m > 0 {
        if s >= 0 {
            QScalar::one_minus_qinv()
        } else if s == -1 {
            QScalar::q_pow(-1, -1)
        } else {
            QScalar::zero()
        }
    } else if s >= 0 {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

/// The elementary integral I(a, b): for b = 0 it is 1 if a ≥ 0 and 0
/// otherwise; for b > 0 it is q^b(1−q⁻¹) if a ≥ 0, −q^{b−1} if a = −1,
/// and 0 if a < −1.
pub fn i_small(a: i64, b: i64) -> QScalar {
    if b == 0 {
        if a >= 0 {
            QScalar::one()
        } else {
            QScalar::zero()
        }
    } else if a >= 0 {
        QScalar::q_pow(b, 1).mul(&QScalar::one_minus_qinv())
    } else if a == -1 {
        QScalar::q_pow(b - 1, -1)
    } else {
        QScalar::zero()
    }
}

fn check_dominant(lambda: &[i64]) -> Result<(), EvalError> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(EvalError::NotDominant(lambda.to_vec()));
    }
    Ok(())
}

fn flags(chart: &ToricChart, lambda: &[i64], m: &[i64]) -> (Vec<i64>, bool, bool, bool, Option<i64>) {
    let s = chart.bounding_data(lambda, m);
    let kappa: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let in_b = chart.in_crystal(&kappa, m);
    let resonant = m[2] == m[4];
    let totally = resonant && m[1] == m[5];
    let deco = if resonant && s[2] == s[3] && s[2] <= 0 && s[2] % 2 == 0 {
        Some(-s[2] / 2)
    } else {
        None
    };
    (s, in_b, resonant, totally, deco)
}

/// The integral I_λ(m) for the G_2 chart of the word (2,1,2,1,2,1).
///
/// Inside B(λ+ρ) the value is
/// `G_1(m) = Π_{α≠γ_4} G(s_α, m_α) · G(2·min{s_3,s_4}−s_4, m_4)`;
/// outside it vanishes unless m is resonant (m_3 = m_5) with m_4 > 0 and
/// s_3 = s_4 = −2d < 0, where it equals
/// `G_res(m) = q^{−d}(1−q⁻¹)·Π_{α≠γ_3,γ_4} G(s_α, m_α)`.
pub fn mv_integral(
    chart: &ToricChart,
    lambda: &[i64],
    m: &[i64],
) -> Result<G2Contribution, EvalError> {
    check_dominant(lambda)?;
    let (s, in_b, resonant, totally, deco) = flags(chart, lambda, m);
    let coefficient = if in_b {
        let mut out = QScalar::one();
        for k in 0..6 {
            if k != 3 {
                out = out.mul(&g_factor(s[k], m[k]));
            }
        }
        out.mul(&g_factor(2 * s[2].min(s[3]) - s[3], m[3]))
    } else if resonant && m[3] > 0 && s[2] == s[3] && s[2] < 0 && s[2] % 2 == 0 {
        let d = -s[2] / 2;
        let mut out = QScalar::q_pow(-d, 1).mul(&QScalar::one_minus_qinv());
        for k in [0usize, 1, 4, 5] {
            out = out.mul(&g_factor(s[k], m[k]));
        }
        out
    } else {
        QScalar::zero()
    };
    Ok(G2Contribution {
        coefficient,
        weight: chart.weight_of(m),
        in_crystal: in_b,
        resonant,
        totally_resonant: totally,
        decoration: deco,
    })
}

fn product_over(s: &[i64], n: &[i64], idx: &[usize]) -> QScalar {
    let mut out = QScalar::one();
    for &k in idx {
        out = out.mul(&g_factor(s[k], n[k]));
    }
    out
}

/// The bracketed right-hand augmented value
/// `Π_{i=1,2,5} G(s_i,n_i) · [Π_{j=3,4,6} G(s_j,n_j) + q⁻¹(1−q⁻¹)]`.
fn right_value(s: &[i64], n: &[i64]) -> QScalar {
    let outer = product_over(s, n, &[0, 1, 4]);
    let inner = product_over(s, n, &[2, 3, 5])
        .add(&QScalar::q_pow(-1, 1).mul(&QScalar::one_minus_qinv()));
    outer.mul(&inner)
}

/// The bracketed left-hand augmented value
/// `Π_{i≠4,5} G(s_i,n_i) · [Π_{j=4,5} G(s_j,n_j) + q⁻¹]`.
fn left_value(s: &[i64], n: &[i64]) -> QScalar {
    let outer = product_over(s, n, &[0, 1, 2, 5]);
    let inner = product_over(s, n, &[3, 4]).add(&QScalar::q_pow(-1, 1));
    outer.mul(&inner)
}

/// Right-hand rule Ĩ^r: for n_3=n_5, n_2≠n_6, min{n_2,n_6}>0, s_3=s_4=0
/// the main display; for n_6>n_2=0 with n_3=n_5>0 the mixed display;
/// otherwise the plain integral.
pub fn augmented_right(
    chart: &ToricChart,
    lambda: &[i64],
    n: &[i64],
) -> Result<G2Contribution, EvalError> {
    check_dominant(lambda)?;
    let (s, in_b, resonant, totally, deco) = flags(chart, lambda, n);
    if !in_b {
        return Err(EvalError::NotInCrystal(n.to_vec()));
    }
    let boundary = resonant && n[1] != n[5] && s[2] == 0 && s[3] == 0;
    let coefficient = if boundary && n[1].min(n[5]) > 0 {
        right_value(&s, n)
    } else if boundary && n[5] > 0 && n[1] == 0 && n[2] > 0 {
        left_value(&s, n)
    } else {
        return mv_integral(chart, lambda, n);
    };
    Ok(G2Contribution {
        coefficient,
        weight: chart.weight_of(n),
        in_crystal: true,
        resonant,
        totally_resonant: totally,
        decoration: deco,
    })
}

/// Left-hand rule Ĩ^l: for n_3=n_5>0, n_2≠n_6, s_3=s_4=0 the main
/// display; for n_3=n_5=0, n_2>n_6>0, s_2=−1 the mixed display; otherwise
/// the plain integral.
pub fn augmented_left(
    chart: &ToricChart,
    lambda: &[i64],
    n: &[i64],
) -> Result<G2Contribution, EvalError> {
    check_dominant(lambda)?;
    let (s, in_b, resonant, totally, deco) = flags(chart, lambda, n);
    if !in_b {
        return Err(EvalError::NotInCrystal(n.to_vec()));
    }
    let boundary = resonant && n[1] != n[5] && s[2] == 0 && s[3] == 0;
    let coefficient = if boundary && n[2] > 0 {
        left_value(&s, n)
    } else if boundary && n[2] == 0 && n[1] > n[5] && n[5] > 0 && s[1] == -1 {
        right_value(&s, n)
    } else {
        return mv_integral(chart, lambda, n);
    };
    Ok(G2Contribution {
        coefficient,
        weight: chart.weight_of(n),
        in_crystal: true,
        resonant,
        totally_resonant: totally,
        decoration: deco,
    })
}

/// The combined augmentation G̃: on the resonant boundary (n_3=n_5,
/// s_3=s_4=0), n_2<n_6 takes the left rule and n_2>n_6 the right rule;
/// everything else (including totally resonant n_2=n_6) is the plain
/// integral.
pub fn augmented(
    chart: &ToricChart,
    lambda: &[i64],
    n: &[i64],
) -> Result<G2Contribution, EvalError> {
    check_dominant(lambda)?;
    let (s, in_b, resonant, _, _) = flags(chart, lambda, n);
    if !in_b {
        return Err(EvalError::NotInCrystal(n.to_vec()));
    }
    if resonant && s[2] == 0 && s[3] == 0 && n[1] != n[5] {
        if n[1] < n[5] {
            augmented_left(chart, lambda, n)
        } else {
            augmented_right(chart, lambda, n)
        }
    } else {
        mv_integral(chart, lambda, n)
    }
}
