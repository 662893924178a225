//! Exact p-adic matrix models for SL(n): Chevalley generators over the
//! rationals, Gauss decomposition, the twisted parametrization z_i(b) of
//! the lower-unipotent cells, and the augmented Iwasawa algorithm that
//! peels a lower-unipotent element along a convex order into coordinates
//! (t_k, w_k) with an integral remainder.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat_int, rmat_identity, rmat_mul, Rat, RMat};
use crate::rootsys::CartanDatum;

/// Errors from the p-adic matrix pipeline.
#[derive(Debug, thiserror::Error)]
pub enum PadicError {
    #[error("Gauss decomposition undefined: principal minor {0} vanishes")]
    GaussSingular(usize),
    #[error("matrix is not lower unipotent after peeling")]
    PeelFailed,
    #[error("matrix is not lower unipotent")]
    NotUnipotent,
    #[error("zero has no valuation")]
    ZeroValuation,
}

/// An exact rational tagged with the residue prime, carrying the p-adic
/// valuation.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicScalar {
    pub value: Rat,
    pub prime: u64,
}

fn count_factors(mut n: BigInt, p: &BigInt) -> i64 {
    let mut c = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        c += 1;
    }
    c
}

/// The exact p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rat, p: u64) -> Result<i64, PadicError> {
    if x.is_zero() {
        return Err(PadicError::ZeroValuation);
    }
    let pb = BigInt::from(p);
    Ok(count_factors(x.numer().abs(), &pb) - count_factors(x.denom().abs(), &pb))
}

impl PadicScalar {
    pub fn new(value: Rat, prime: u64) -> Self {
        PadicScalar { value, prime }
    }

    /// val_p of the value; errors on zero.
    pub fn val(&self) -> Result<i64, PadicError> {
        valuation(&self.value, self.prime)
    }

    /// Whether the value lies in ℤ_p (zero counts as integral).
    pub fn is_integral(&self) -> bool {
        self.value.is_zero() || self.val().unwrap() >= 0
    }
}

/// The row/column span (a, b) of a positive A_{n−1} root written in
/// simple-root coordinates: γ = α_{a+1} + ⋯ + α_b as e_{a+1} − e_{b+1},
/// returned 0-based as matrix positions (a, b) with a < b.
fn root_span(gamma: &[i64]) -> (usize, usize) {
    let support: Vec<usize> = gamma
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i)
        .collect();
    assert!(
        !support.is_empty() && gamma.iter().all(|&c| c == 0 || c == 1),
        "not a type-A positive root: {gamma:?}"
    );
    (support[0], support[support.len() - 1] + 1)
}

/// I + c·E_{a,b} for the positive root with span (a, b): the upper root
/// subgroup element x_γ(c).
pub fn x_root(n: usize, span: (usize, usize), c: &Rat) -> RMat {
    let mut m = rmat_identity(n);
    m[span.0][span.1] = c.clone();
    m
}

/// I + c·E_{b,a}: the lower root subgroup element y_γ(c).
pub fn y_root(n: usize, span: (usize, usize), c: &Rat) -> RMat {
    let mut m = rmat_identity(n);
    m[span.1][span.0] = c.clone();
    m
}

/// The simple-root versions x_i(c) and y_i(c) (0-based i).
pub fn x_simple(n: usize, i: usize, c: &Rat) -> RMat {
    x_root(n, (i, i + 1), c)
}

pub fn y_simple(n: usize, i: usize, c: &Rat) -> RMat {
    y_root(n, (i, i + 1), c)
}

/// The Weyl representative s̄ for the root with span (a, b): the embedded
/// [[0, −1], [1, 0]] block.
pub fn sbar_root(n: usize, span: (usize, usize)) -> RMat {
    let mut m = rmat_identity(n);
    let (a, b) = span;
    m[a][a] = Rat::zero();
    m[b][b] = Rat::zero();
    m[a][b] = -Rat::one();
    m[b][a] = Rat::one();
    m
}

/// The torus element a^{γ∨} for a coweight γ∨ in simple-coroot
/// coordinates: Π_i α_i∨(a)^{c_i} with α_i∨(a) = diag(…, a, a⁻¹, …).
pub fn torus_coweight(n: usize, a: &Rat, coweight: &[i64]) -> RMat {
    assert!(!a.is_zero());
    let mut exps = vec![0i64; n];
    for (i, &c) in coweight.iter().enumerate() {
        exps[i] += c;
        exps[i + 1] -= c;
    }
    let mut m = rmat_identity(n);
    for (i, &e) in exps.iter().enumerate() {
        m[i][i] = rat_pow(a, e);
    }
    m
}

fn rat_pow(a: &Rat, e: i64) -> Rat {
    let mut out = Rat::one();
    let base = if e >= 0 { a.clone() } else { a.recip() };
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

/// The representative w̄_0 = s̄_{i_1}⋯s̄_{i_N} of the longest element.
pub fn w0bar(n: usize, word: &[usize]) -> RMat {
    let mut m = rmat_identity(n);
    for &i in word {
        m = rmat_mul(&m, &sbar_root(n, (i, i + 1)));
    }
    m
}

/// Plain matrix transpose.
pub fn transpose(m: &RMat) -> RMat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &RMat) -> Rat {
    let n = m.len();
    let mut a: RMat = m.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        let inv = a[k][k].recip();
        for i in (k + 1)..n {
            let factor = &a[i][k] * &inv;
            for j in k..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// The positive twist ι: an anti-automorphism with x_i(a)^ι = x_i(a) and
/// t^ι = t⁻¹; on SL(n) it is d g⁻¹ d⁻¹ with d = diag(1, −1, 1, …).
pub fn iota(m: &RMat) -> Result<RMat, PadicError> {
    let n = m.len();
    let inv = crate::linalg::rmat_inverse(m).ok_or(PadicError::GaussSingular(0))?;
    let sign = |i: usize| if i % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok((0..n)
        .map(|i| (0..n).map(|j| sign(i) * &inv[i][j] * sign(j)).collect())
        .collect())
}

/// Gauss decomposition g = [g]_+ [g]_0 [g]_− into upper-unipotent,
/// diagonal, and lower-unipotent factors.
pub fn gauss_decompose(m: &RMat) -> Result<(RMat, RMat, RMat), PadicError> {
    let n = m.len();
    // Reverse rows and columns: the factorization becomes a Crout
    // L·(unit U) decomposition.
    let rev = |a: &RMat| -> RMat {
        (0..n)
            .map(|i| (0..n).map(|j| a[n - 1 - i][n - 1 - j].clone()).collect())
            .collect()
    };
    let p = rev(m);
    let mut lo = rmat_identity(n);
    let mut up = rmat_identity(n);
    for k in 0..n {
        for i in k..n {
            let mut s = p[i][k].clone();
            for j in 0..k {
                let t = &lo[i][j] * &up[j][k];
                s -= t;
            }
            lo[i][k] = s;
        }
        if lo[k][k].is_zero() {
            return Err(PadicError::GaussSingular(k));
        }
        let inv = lo[k][k].recip();
        for j in (k + 1)..n {
            let mut s = p[k][j].clone();
            for l in 0..k {
                let t = &lo[k][l] * &up[l][j];
                s -= t;
            }
            up[k][j] = s * &inv;
        }
    }
    let u_minus = rev(&up);
    let lo_back = rev(&lo);
    let mut t = rmat_identity(n);
    let mut u_plus = rmat_identity(n);
    for i in 0..n {
        t[i][i] = lo_back[i][i].clone();
    }
    for i in 0..n {
        for j in i..n {
            u_plus[i][j] = &lo_back[i][j] * t[j][j].recip();
        }
    }
    Ok((u_plus, t, u_minus))
}

/// The matrix pinning of the root subgroups attached to the convex order
/// of a word: x_{γ_k} and y_{γ_k} are conjugates of the simple
/// generators by s̄_{i_N}⋯s̄_{i_{k+1}}, which fixes a sign ε_k = ±1 in
/// front of the matrix unit at γ_k's span.
pub struct ConvexPinning {
    pub n: usize,
    pub spans: Vec<(usize, usize)>,
    pub signs: Vec<Rat>,
}

impl ConvexPinning {
    pub fn new(datum: &CartanDatum, word: &[usize]) -> Self {
        let n = datum.rank + 1;
        let order = crate::rootsys::convex_order(datum, word).expect("reduced long word");
        let nn = word.len();
        let mut spans = Vec::with_capacity(nn);
        let mut signs = Vec::with_capacity(nn);
        // Conjugators accumulate right-to-left: W_k = s̄_{i_N}⋯s̄_{i_{k+1}}.
        let mut conj = rmat_identity(n);
        let mut conj_inv = rmat_identity(n);
        let mut pending: Vec<(usize, (usize, usize), Rat)> = Vec::new();
        for k in (0..nn).rev() {
            let m = rmat_mul(&rmat_mul(&conj, &y_simple(n, word[k], &Rat::one())), &conj_inv);
            let span = root_span(&order.roots[k]);
            let sign = m[span.1][span.0].clone();
            assert_eq!(
                m,
                y_root(n, span, &sign),
                "conjugated generator is not a signed matrix unit"
            );
            pending.push((k, span, sign));
            let s = sbar_root(n, (word[k], word[k] + 1));
            conj = rmat_mul(&conj, &s);
            conj_inv = rmat_mul(
                &crate::linalg::rmat_inverse(&s).unwrap(),
                &conj_inv,
            );
        }
        pending.sort_by_key(|(k, _, _)| *k);
        for (_, span, sign) in pending {
            spans.push(span);
            signs.push(sign);
        }
        ConvexPinning { n, spans, signs }
    }

    /// y_{γ_k}(c) in the conjugation pinning.
    pub fn y_gamma(&self, k: usize, c: &Rat) -> RMat {
        y_root(self.n, self.spans[k], &(&self.signs[k] * c))
    }

    /// x_{γ_k}(c) in the conjugation pinning.
    pub fn x_gamma(&self, k: usize, c: &Rat) -> RMat {
        x_root(self.n, self.spans[k], &(&self.signs[k] * c))
    }
}

/// Factor a lower-unipotent matrix along the convex order:
/// u = Π_{j ascending} y_{γ_j}(c_j) in the conjugation pinning. Returns
/// the coefficients c_j.
pub fn peel_lower(pinning: &ConvexPinning, u: &RMat) -> Result<Vec<Rat>, PadicError> {
    let n = pinning.n;
    for i in 0..n {
        if u[i][i] != Rat::one() {
            return Err(PadicError::NotUnipotent);
        }
        for j in (i + 1)..n {
            if !u[i][j].is_zero() {
                return Err(PadicError::NotUnipotent);
            }
        }
    }
    let mut rem = u.to_vec();
    let mut coeffs = Vec::with_capacity(pinning.spans.len());
    for k in 0..pinning.spans.len() {
        let span = pinning.spans[k];
        let c = &pinning.signs[k] * &rem[span.1][span.0];
        rem = rmat_mul(&pinning.y_gamma(k, &(-c.clone())), &rem);
        coeffs.push(c);
    }
    if rem != rmat_identity(n) {
        return Err(PadicError::PeelFailed);
    }
    Ok(coeffs)
}

/// z_i(b) = ψ_{w_0}(y_{i_1}(b_1)⋯y_{i_N}(b_N)) where ψ_{w_0} = η∘ι and
/// η(u) = [w̄_0 uᵀ]_−.
pub fn z_word(datum: &CartanDatum, word: &[usize], b: &[Rat]) -> Result<RMat, PadicError> {
    let n = datum.rank + 1;
    let mut y = rmat_identity(n);
    for (&i, bk) in word.iter().zip(b) {
        y = rmat_mul(&y, &y_simple(n, i, bk));
    }
    let twisted = transpose(&iota(&y)?);
    let m = rmat_mul(&w0bar(n, word), &twisted);
    let (_, _, u_minus) = gauss_decompose(&m)?;
    Ok(u_minus)
}

/// Full record of one run of the Iwasawa peeling: the convex-order
/// coefficients of the input, the extracted (t_k, w_k, m_k), and the
/// final factorization u = p_1·κ.
#[derive(Clone, Debug)]
pub struct IwasawaTrace {
    pub word: Vec<usize>,
    pub x_coeffs: Vec<Rat>,
    pub t: Vec<Rat>,
    pub w: Vec<Rat>,
    pub m: Vec<i64>,
    pub p1: RMat,
    pub kappa: RMat,
}

/// The augmented Iwasawa algorithm along the convex order of `word`:
/// starting from p_{N+1} = 1 and descending k, factor
/// y_{γ_k}(x_k)·p_{k+1} = p_k′·y_{γ_k}(t_k), set w_k = t_k when
/// val(t_k) < 0 and 1 otherwise, and continue with
/// p_k = p_k′·w_k^{−γ_k}·x_{γ_k}(w_k). The discarded factors assemble the
/// integral part κ with u = p_1·κ.
pub fn iwasawa_algorithm2(
    datum: &CartanDatum,
    word: &[usize],
    prime: u64,
    u: &RMat,
) -> Result<IwasawaTrace, PadicError> {
    let n = datum.rank + 1;
    let order = crate::rootsys::convex_order(datum, word).expect("reduced long word");
    let pinning = ConvexPinning::new(datum, word);
    let x_coeffs = peel_lower(&pinning, u)?;
    let nn = order.roots.len();
    let mut p = rmat_identity(n);
    let mut kappa = rmat_identity(n);
    let mut t_out = vec![Rat::zero(); nn];
    let mut w_out = vec![Rat::zero(); nn];
    let mut m_out = vec![0i64; nn];
    for k in (0..nn).rev() {
        let m_k = rmat_mul(&pinning.y_gamma(k, &x_coeffs[k]), &p);
        // t_k is the γ_k-coefficient of the lower-unipotent part.
        let (_, _, lower) = gauss_decompose(&m_k)?;
        let t_k = peel_lower(&pinning, &lower)?[k].clone();
        let w_k = if !t_k.is_zero() && valuation(&t_k, prime)? < 0 {
            t_k.clone()
        } else {
            Rat::one()
        };
        let coweight = &order.coroots[k];
        p = rmat_mul(&m_k, &pinning.y_gamma(k, &(-t_k.clone())));
        p = rmat_mul(&p, &torus_coweight(n, &w_k.recip(), coweight));
        p = rmat_mul(&p, &pinning.x_gamma(k, &w_k));
        let mut kf = pinning.x_gamma(k, &(-w_k.clone()));
        kf = rmat_mul(&kf, &torus_coweight(n, &w_k, coweight));
        kf = rmat_mul(&kf, &pinning.y_gamma(k, &t_k));
        kappa = rmat_mul(&kf, &kappa);
        m_out[k] = -valuation(&w_k, prime)?;
        t_out[k] = t_k;
        w_out[k] = w_k;
    }
    // Exact reassembly and integrality checks.
    assert_eq!(rmat_mul(&p, &kappa), u.to_vec(), "u ≠ p_1·κ");
    for i in 0..n {
        for j in 0..i {
            assert!(p[i][j].is_zero(), "p_1 is not upper triangular");
        }
        for j in 0..n {
            assert!(
                PadicScalar::new(kappa[i][j].clone(), prime).is_integral(),
                "κ is not integral"
            );
        }
    }
    assert_eq!(determinant(&kappa), Rat::one());
    // Torus part of p_1 is Π_j w_j^{−γ_j∨}.
    let mut h = rmat_identity(n);
    for k in 0..nn {
        h = rmat_mul(&h, &torus_coweight(n, &w_out[k].recip(), &order.coroots[k]));
    }
    for i in 0..n {
        assert_eq!(p[i][i], h[i][i], "torus part mismatch");
    }
    Ok(IwasawaTrace {
        word: word.to_vec(),
        x_coeffs,
        t: t_out,
        w: w_out,
        m: m_out,
        p1: p,
        kappa,
    })
}

/// A reproducible unit of ℤ_p: a + b·p with a ∈ [1, p−1], b ∈ [0, 3].
fn sample_unit(rng: &mut ChaCha8Rng, p: u64) -> Rat {
    let a = rng.gen_range(1..p);
    let b = rng.gen_range(0..4u64);
    rat_int((a + b * p) as i64)
}

/// p^e times a sampled unit.
pub fn sample_with_valuation(rng: &mut ChaCha8Rng, p: u64, e: i64) -> Rat {
    sample_unit(rng, p) * rat_pow(&rat_int(p as i64), e)
}

/// One batch of verified samples of the inverse-coordinate property:
/// with val(b_k) > 0 for all k, the algorithm returns w_k = 1/b_k.
#[derive(Clone, Debug)]
pub struct GeomAlgoReport {
    pub samples: usize,
    pub matches: usize,
    pub failures: Vec<(Vec<Rat>, Vec<Rat>)>,
}

/// Run `samples` seeded trials of z_word → Iwasawa for the given word and
/// check w_k·b_k = 1 in every coordinate.
pub fn verify_geom_algo(
    datum: &CartanDatum,
    word: &[usize],
    prime: u64,
    samples: usize,
    seed: u64,
) -> Result<GeomAlgoReport, PadicError> {
    let nn = word.len();
    let mut matches = 0;
    let mut failures = Vec::new();
    for s in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
        let b: Vec<Rat> = (0..nn)
            .map(|_| {
                let e = rng.gen_range(1..=3i64);
                sample_with_valuation(&mut rng, prime, e)
            })
            .collect();
        let u = z_word(datum, word, &b)?;
        let trace = iwasawa_algorithm2(datum, word, prime, &u)?;
        let ok = trace
            .w
            .iter()
            .zip(&b)
            .all(|(w, bk)| w * bk == Rat::one());
        if ok {
            matches += 1;
        } else {
            failures.push((b, trace.w.clone()));
        }
    }
    Ok(GeomAlgoReport {
        samples,
        matches,
        failures,
    })
}

/// Report for the SL_4 closed-form check of the first convex-order
/// coefficients as Laurent polynomials h_i(t, w).
#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub samples: usize,
    pub matches: usize,
    pub m4_zero_samples: usize,
    pub failures: Vec<IwasawaTrace>,
}

fn monomial_eval(t: &[Rat], w: &[Rat], t_exp: &[i64], w_exp: &[i64]) -> Rat {
    let mut out = Rat::one();
    for (tk, &e) in t.iter().zip(t_exp) {
        out *= rat_pow(tk, e);
    }
    for (wk, &e) in w.iter().zip(w_exp) {
        out *= rat_pow(wk, e);
    }
    out
}

/// g_1(t, w) = t_3 + t_2w_3/w_4 + t_1w_2w_3/(w_5w_6) + t_2t_4w_3/(w_4w_6)
/// for the SL_4 word (3, 2, 1, 2, 3, 2).
pub fn appendix_g1(t: &[Rat], w: &[Rat]) -> Rat {
    monomial_eval(t, w, &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 0])
        + monomial_eval(t, w, &[0, 1, 0, 0, 0, 0], &[0, 0, 1, -1, 0, 0])
        + monomial_eval(t, w, &[1, 0, 0, 0, 0, 0], &[0, 1, 1, 0, -1, -1])
        + monomial_eval(t, w, &[0, 1, 0, 1, 0, 0], &[0, 0, 1, -1, 0, -1])
}

/// h_1 = g_1 − (t_3w_4/w_6)(1 − t_4/w_4); the sign of the correction
/// term is fixed by the s̄-conjugation pinning of [`ConvexPinning`], and
/// the term vanishes whenever t_4 = w_4, i.e. whenever m_4 > 0.
pub fn appendix_h1(t: &[Rat], w: &[Rat]) -> Rat {
    let correction = monomial_eval(t, w, &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, -1])
        * (Rat::one() - &t[3] * w[3].recip());
    appendix_g1(t, w) - correction
}

/// h_2 = t_6.
pub fn appendix_h2(t: &[Rat], _w: &[Rat]) -> Rat {
    t[5].clone()
}

/// h_3 = t_5 + t_4w_5/w_6.
pub fn appendix_h3(t: &[Rat], w: &[Rat]) -> Rat {
    t[4].clone() + monomial_eval(t, w, &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, -1])
}

/// Verify the SL_4 formulas on seeded samples with assorted valuation
/// patterns: the convex-order coefficients of u at the three simple-root
/// positions must equal h_1, h_3, h_2 exactly.
pub fn verify_appendix(prime: u64, samples: usize, seed: u64) -> Result<AppendixReport, PadicError> {
    let a3 = CartanDatum::build_cartan(crate::rootsys::Series::A, 3).expect("A_3");
    let word = [2usize, 1, 0, 1, 2, 1];
    let n = 4;
    let pinning = ConvexPinning::new(&a3, &word);
    let mut matches = 0;
    let mut m4_zero_samples = 0;
    let mut failures = Vec::new();
    for s in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
        // Direct sampling of u = Π y_{γ_j}(x_j) with assorted valuations,
        // forcing an integral t_4 on a third of the samples so the
        // m_4 = 0 branch of the correction term is exercised.
        let x: Vec<Rat> = (0..6)
            .map(|k| {
                let e = if s % 3 == 0 && k == 3 {
                    rng.gen_range(0..=2i64)
                } else {
                    rng.gen_range(-3..=2i64)
                };
                sample_with_valuation(&mut rng, prime, e)
            })
            .collect();
        let mut u = rmat_identity(n);
        for (k, xk) in x.iter().enumerate() {
            u = rmat_mul(&u, &pinning.y_gamma(k, xk));
        }
        let trace = iwasawa_algorithm2(&a3, &word, prime, &u)?;
        if trace.m[3] == 0 {
            m4_zero_samples += 1;
        }
        let ok = trace.x_coeffs[0] == appendix_h1(&trace.t, &trace.w)
            && trace.x_coeffs[5] == appendix_h2(&trace.t, &trace.w)
            && trace.x_coeffs[3] == appendix_h3(&trace.t, &trace.w);
        if ok {
            matches += 1;
        } else {
            failures.push(trace);
        }
    }
    Ok(AppendixReport {
        samples,
        matches,
        m4_zero_samples,
        failures,
    })
}
