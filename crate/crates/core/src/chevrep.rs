//! Fundamental representations with exact integer generator matrices,
//! Chevalley one-parameter subgroups as symbolic matrices, generalized
//! minors as Laurent polynomials, and trail extraction.
//!
//! Modules are built generically from the Cartan matrix: weight spaces are
//! grown level by level below the highest weight, linear relations are
//! detected with the contravariant form (⟨f_i x, y⟩ = ⟨x, e_i y⟩), and the
//! resulting rational module is re-based onto its divided-power integral
//! lattice so that every `exp(t·E_i)` has integer matrix entries.

use crate::exactpoly::LaurentPoly;
use crate::linalg::*;
use crate::rootsys::{CartanDatum, WeylElement};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Errors from module construction and minor evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ChevRepError {
    #[error("construction failure: {0}")]
    Construction(String),
    #[error("minor has mixed-sign coefficients: {0}")]
    MixedSigns(String),
    #[error("trail telescoping failed for exponents {0:?}")]
    Telescoping(Vec<i64>),
    #[error("denominator minor is not a monomial: {0}")]
    DenominatorNotMonomial(String),
}

/// A fundamental module V(Λ_i) in an integral basis of weight vectors.
#[derive(Clone)]
pub struct RepModule {
    /// Highest weight in fundamental-weight coordinates.
    pub highest_weight: Vec<i64>,
    /// Weight of each basis vector, fundamental-weight coordinates.
    pub weights: Vec<Vec<i64>>,
    /// Raising generators e_i as integer matrices (column-action:
    /// `E[i][r][c]` is the coefficient of basis vector r in e_i·(vector c)).
    pub e: Vec<Vec<Vec<BigInt>>>,
    /// Lowering generators f_i.
    pub f: Vec<Vec<Vec<BigInt>>>,
    /// Index of the highest-weight basis vector.
    pub hw_index: usize,
    pub rank: usize,
}

/// An i-trail extracted from a generalized minor: exponents c_k(π) and a
/// positive integer coefficient d_π, telescoping from `source` to `target`
/// (weights in fundamental-weight coordinates).
#[derive(Clone, Debug)]
pub struct Trail {
    pub word: Vec<usize>,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub c: Vec<i64>,
    pub d: BigInt,
}

fn big_matrix_to_rat(m: &[Vec<BigInt>]) -> RMat {
    m.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

/// Dimension of V(λ) by the Weyl dimension formula,
/// `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(datum: &CartanDatum, lambda: &[i64]) -> BigInt {
    let rho = datum.rho();
    let lam_rho: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for gamma in &datum.roots[..datum.num_positive] {
        let cv = datum.coroot_of(gamma).unwrap();
        num *= BigInt::from(datum.pairing(&lam_rho, &cv));
        den *= BigInt::from(datum.pairing(&rho, &cv));
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension must be an integer");
    q
}

/// Intermediate weight-space data during construction (rational basis).
struct WeightSpace {
    dim: usize,
    /// Gram matrix of the contravariant form on the chosen basis.
    gram: RMat,
    /// e_i action: coordinates in the basis of the weight μ+α_i,
    /// one coordinate vector per basis vector of μ.
    e_to: Vec<Vec<Vec<Rat>>>,
    /// f_i action: coordinates in the basis of the weight μ−α_i.
    f_to: Vec<Vec<Vec<Rat>>>,
}

/// Build the fundamental module V(Λ_i) with exact integer matrices.
pub fn fundamental_rep(datum: &CartanDatum, i: usize) -> Result<RepModule, ChevRepError> {
    highest_weight_rep(datum, &datum.fundamental_weight(i))
}

/// Build any dominant-integral highest-weight module V(λ).
pub fn highest_weight_rep(datum: &CartanDatum, lambda: &[i64]) -> Result<RepModule, ChevRepError> {
    let r = datum.rank;
    let expected_dim = weyl_dimension(datum, lambda);
    // ---- Stage 1: rational module, level by level -----------------------
    let mut spaces: BTreeMap<Vec<i64>, WeightSpace> = BTreeMap::new();
    spaces.insert(
        lambda.to_vec(),
        WeightSpace {
            dim: 1,
            gram: rmat_identity(1),
            e_to: vec![vec![vec![]]; r],
            f_to: vec![Vec::new(); r],
        },
    );
    let mut current_level: Vec<Vec<i64>> = vec![lambda.to_vec()];
    let max_levels = 200;
    for _ in 0..max_levels {
        if current_level.is_empty() {
            break;
        }
        // Candidate weights one level down.
        let mut next_weights: Vec<Vec<i64>> = Vec::new();
        for mu in &current_level {
            for j in 0..r {
                // μ − α_j in fundamental-weight coordinates.
                let target: Vec<i64> = (0..r).map(|l| mu[l] - datum.cartan[l][j]).collect();
                if !next_weights.contains(&target) {
                    next_weights.push(target);
                }
            }
        }
        let mut new_level: Vec<Vec<i64>> = Vec::new();
        for mu in next_weights {
            if build_weight_space(datum, &mu, &mut spaces)? {
                new_level.push(mu);
            }
        }
        current_level = new_level;
    }
    if !current_level.is_empty() {
        return Err(ChevRepError::Construction(
            "module did not close within the level cap".into(),
        ));
    }

    // ---- Stage 2: global rational matrices ------------------------------
    let weight_list: Vec<Vec<i64>> = spaces.keys().cloned().collect();
    let mut offsets: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut dim = 0usize;
    for w in &weight_list {
        offsets.insert(w.clone(), dim);
        dim += spaces[w].dim;
    }
    if BigInt::from(dim) != expected_dim {
        return Err(ChevRepError::Construction(format!(
            "dimension {dim} does not match the Weyl dimension {expected_dim}"
        )));
    }
    let mut basis_weights: Vec<Vec<i64>> = vec![vec![]; dim];
    for w in &weight_list {
        for a in 0..spaces[w].dim {
            basis_weights[offsets[w] + a] = w.clone();
        }
    }
    let mut e_mats = vec![rmat_zero(dim, dim); r];
    let mut f_mats = vec![rmat_zero(dim, dim); r];
    for mu in &weight_list {
        let sp = &spaces[mu];
        for j in 0..r {
            let up: Vec<i64> = (0..r).map(|l| mu[l] + datum.cartan[l][j]).collect();
            if let Some(up_off) = offsets.get(&up) {
                for a in 0..sp.dim {
                    for (t, coeff) in sp.e_to[j][a].iter().enumerate() {
                        e_mats[j][up_off + t][offsets[mu] + a] = coeff.clone();
                    }
                }
            }
            let down: Vec<i64> = (0..r).map(|l| mu[l] - datum.cartan[l][j]).collect();
            if let Some(down_off) = offsets.get(&down) {
                if !sp.f_to[j].is_empty() {
                    for a in 0..sp.dim {
                        for (t, coeff) in sp.f_to[j][a].iter().enumerate() {
                            f_mats[j][down_off + t][offsets[mu] + a] = coeff.clone();
                        }
                    }
                }
            }
        }
    }

    // ---- Stage 3: divided-power integral lattice ------------------------
    let e_div = divided_power_tables(&e_mats, dim);
    let f_div = divided_power_tables(&f_mats, dim);
    let hw_global = offsets[&lambda.to_vec()];
    let mut hw_vec = vec![Rat::zero(); dim];
    hw_vec[hw_global] = Rat::one();
    let lattice = divided_power_lattice(&e_div, &f_div, &basis_weights, hw_vec, dim)?;
    // Change of basis: columns of P are the lattice basis vectors.
    let mut p = rmat_zero(dim, dim);
    for (c, v) in lattice.iter().enumerate() {
        for (row, x) in v.iter().enumerate() {
            p[row][c] = x.clone();
        }
    }
    let p_inv = rmat_inverse(&p)
        .ok_or_else(|| ChevRepError::Construction("lattice basis is singular".into()))?;
    let to_int = |m: &RMat| -> Result<Vec<Vec<BigInt>>, ChevRepError> {
        let conj = rmat_mul(&rmat_mul(&p_inv, m), &p);
        conj.iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.denom().is_one() {
                            Ok(x.numer().clone())
                        } else {
                            Err(ChevRepError::Construction(format!(
                                "non-integral matrix entry {x} after lattice re-basing"
                            )))
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let e_int: Vec<Vec<Vec<BigInt>>> = e_mats
        .iter()
        .map(|m| to_int(m))
        .collect::<Result<_, _>>()?;
    let f_int: Vec<Vec<Vec<BigInt>>> = f_mats
        .iter()
        .map(|m| to_int(m))
        .collect::<Result<_, _>>()?;
    // Weights of the new basis vectors: each lattice vector must be
    // weight-homogeneous.
    let mut new_weights: Vec<Vec<i64>> = Vec::with_capacity(dim);
    for v in &lattice {
        let mut w: Option<&Vec<i64>> = None;
        for (row, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match w {
                    None => w = Some(&basis_weights[row]),
                    Some(prev) => {
                        if prev != &basis_weights[row] {
                            return Err(ChevRepError::Construction(
                                "lattice basis vector mixes weights".into(),
                            ));
                        }
                    }
                }
            }
        }
        new_weights.push(w.expect("lattice vector is nonzero").clone());
    }
    // Highest-weight index and sign normalization: the λ weight space is
    // one-dimensional, so exactly one lattice vector lives there.
    let hw_index = new_weights
        .iter()
        .position(|w| w == &lambda.to_vec())
        .expect("highest weight space present");
    let mut rep = RepModule {
        highest_weight: lambda.to_vec(),
        weights: new_weights,
        e: e_int,
        f: f_int,
        hw_index,
        rank: r,
    };
    // Normalize the highest-weight vector's sign: v_λ must be the basis
    // vector itself with coefficient +1, not −1.
    if p[hw_global][hw_index].is_negative() {
        flip_basis_sign(&mut rep, hw_index);
    }
    check_module_axioms(datum, &rep)?;
    Ok(rep)
}

/// Build one weight space from its parents; returns false if it is zero.
fn build_weight_space(
    datum: &CartanDatum,
    mu: &[i64],
    spaces: &mut BTreeMap<Vec<i64>, WeightSpace>,
) -> Result<bool, ChevRepError> {
    let r = datum.rank;
    // Candidates: (j, a) = f_j applied to basis vector a of weight μ+α_j.
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    let mut parents: Vec<Vec<i64>> = Vec::new();
    for j in 0..r {
        let up: Vec<i64> = (0..r).map(|l| mu[l] + datum.cartan[l][j]).collect();
        parents.push(up.clone());
        if let Some(sp) = spaces.get(&up) {
            for a in 0..sp.dim {
                candidates.push((j, a));
            }
        }
    }
    if candidates.is_empty() {
        return Ok(false);
    }
    // Contravariant Gram matrix on the candidates:
    // B(f_i u_a, f_j u'_b) = B(u_a, f_j (e_i u'_b)) + δ_ij ⟨ν, α_i^∨⟩ B(u_a, u'_b)
    // with ν = μ + α_j the weight of u'_b. All ingredients live at higher
    // levels and are already known.
    let n_cand = candidates.len();
    let mut big_gram = rmat_zero(n_cand, n_cand);
    for (col, &(j, b)) in candidates.iter().enumerate() {
        let nu = &parents[j];
        let nu_sp = &spaces[nu];
        for (row, &(i, a)) in candidates.iter().enumerate() {
            // Needs B(u_a, w) where u_a has weight μ+α_i and w ∈ V_{μ+α_i}.
            let up_i = &parents[i];
            let mut w_coords = vec![Rat::zero(); spaces[up_i].dim];
            // f_j(e_i u'_b): e_i u'_b lives at ν+α_i; its f_j image lives at
            // ν+α_i−α_j = μ+α_i.
            let e_i_b = &nu_sp.e_to[i][b];
            if !e_i_b.is_empty() {
                let nu_up: Vec<i64> = (0..r).map(|l| nu[l] + datum.cartan[l][i]).collect();
                if let Some(nu_up_sp) = spaces.get(&nu_up) {
                    if !nu_up_sp.f_to[j].is_empty() {
                        for (t, coeff) in e_i_b.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            for (s, fc) in nu_up_sp.f_to[j][t].iter().enumerate() {
                                w_coords[s] += coeff * fc;
                            }
                        }
                    }
                }
            }
            if i == j {
                let h = Rat::from_integer(BigInt::from(nu[i]));
                w_coords[b] += h;
            }
            // B(u_a, Σ w_s u_s) = Σ w_s Gram[a][s].
            let gram_up = &spaces[up_i].gram;
            big_gram[row][col] = w_coords
                .iter()
                .enumerate()
                .map(|(s, ws)| ws * &gram_up[a][s])
                .sum();
        }
    }
    // Greedy selection of a basis among the candidates: the contravariant
    // form is nondegenerate on the irreducible quotient, so the rank of the
    // candidate Gram equals dim V(λ)_μ.
    let mut selected: Vec<usize> = Vec::new();
    for c in 0..n_cand {
        let mut trial = selected.clone();
        trial.push(c);
        let sub: RMat = trial
            .iter()
            .map(|&rr| trial.iter().map(|&cc| big_gram[rr][cc].clone()).collect())
            .collect();
        if rmat_rank(&sub) == trial.len() {
            selected = trial;
        }
    }
    if selected.is_empty() {
        return Ok(false);
    }
    let dim = selected.len();
    let gram: RMat = selected
        .iter()
        .map(|&rr| selected.iter().map(|&cc| big_gram[rr][cc].clone()).collect())
        .collect();
    let gram_inv = rmat_inverse(&gram)
        .ok_or_else(|| ChevRepError::Construction("selected Gram is singular".into()))?;
    // Coordinates of every candidate in the selected basis.
    let mut cand_coords: Vec<Vec<Rat>> = Vec::with_capacity(n_cand);
    for c in 0..n_cand {
        let rhs: Vec<Rat> = selected.iter().map(|&rr| big_gram[rr][c].clone()).collect();
        cand_coords.push(rmat_apply(&gram_inv, &rhs));
    }
    // Record f_j actions from the parents into μ.
    for j in 0..r {
        let up = &parents[j];
        if let Some(up_dim) = spaces.get(up).map(|s| s.dim) {
            let mut action: Vec<Vec<Rat>> = Vec::with_capacity(up_dim);
            for a in 0..up_dim {
                let idx = candidates.iter().position(|&(jj, aa)| jj == j && aa == a);
                action.push(cand_coords[idx.unwrap()].clone());
            }
            spaces.get_mut(up).unwrap().f_to[j] = action;
        }
    }
    // e_j action on the new basis vectors: for basis vector x = f_i u_a,
    // e_j x = f_i (e_j u_a) + δ_ij ⟨wt(u_a), α_j^∨⟩ u_a ∈ V_{μ+α_j}.
    let mut e_to: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); r];
    for j in 0..r {
        let up_j = &parents[j];
        let Some(up_j_dim) = spaces.get(up_j).map(|s| s.dim) else {
            e_to[j] = vec![vec![]; dim];
            continue;
        };
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim);
        for &sel in &selected {
            let (i, a) = candidates[sel];
            let up_i = &parents[i];
            let mut out = vec![Rat::zero(); up_j_dim];
            // f_i (e_j u_a): e_j u_a lives at μ+α_i+α_j; f_i maps it into
            // μ+α_j.
            let e_j_a = &spaces[up_i].e_to[j][a];
            if !e_j_a.is_empty() {
                let upup: Vec<i64> = (0..r).map(|l| up_i[l] + datum.cartan[l][j]).collect();
                if let Some(upup_sp) = spaces.get(&upup) {
                    if !upup_sp.f_to[i].is_empty() {
                        for (t, coeff) in e_j_a.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            for (s, fc) in upup_sp.f_to[i][t].iter().enumerate() {
                                out[s] += coeff * fc;
                            }
                        }
                    }
                }
            }
            if i == j {
                let h = Rat::from_integer(BigInt::from(up_i[i]));
                out[a] += h;
            }
            rows.push(out);
        }
        e_to[j] = rows;
    }
    spaces.insert(
        mu.to_vec(),
        WeightSpace {
            dim,
            gram,
            e_to,
            f_to: vec![Vec::new(); r],
        },
    );
    Ok(true)
}

/// Tables of divided powers M^n/n! for each generator (rational), indexed
/// `[generator][n−1]`, stopping at the nilpotency degree.
fn divided_power_tables(mats: &[RMat], dim: usize) -> Vec<Vec<RMat>> {
    mats.iter()
        .map(|m| {
            let mut table = Vec::new();
            let mut acc = m.clone();
            let mut n = 1i64;
            while !rmat_is_zero(&acc) && n <= dim as i64 + 1 {
                table.push(acc.clone());
                n += 1;
                acc = rmat_scale(&rmat_mul(&acc, m), &(Rat::one() / rat_int(n)));
            }
            table
        })
        .collect()
}

/// Smallest lattice containing the highest-weight vector and closed under
/// all divided powers of the generators (the integral form of the module).
fn divided_power_lattice(
    e_div: &[Vec<RMat>],
    f_div: &[Vec<RMat>],
    basis_weights: &[Vec<i64>],
    hw_vec: Vec<Rat>,
    dim: usize,
) -> Result<Vec<Vec<Rat>>, ChevRepError> {
    // Keep per-weight HNF bases; generators map weight vectors to weight
    // vectors, so weight homogeneity is preserved.
    let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<Rat>>> = BTreeMap::new();
    let hw_weight = basis_weights
        .iter()
        .zip(&hw_vec)
        .find(|(_, x)| !x.is_zero())
        .map(|(w, _)| w.clone())
        .expect("highest-weight vector nonzero");
    by_weight.insert(hw_weight, vec![hw_vec]);
    let mut frontier: Vec<Vec<Rat>> = by_weight.values().flatten().cloned().collect();
    let max_rounds = 4 * dim + 8;
    for _ in 0..max_rounds {
        if frontier.is_empty() {
            break;
        }
        let mut new_vectors: Vec<Vec<Rat>> = Vec::new();
        for v in &frontier {
            for table in e_div.iter().chain(f_div) {
                for m in table {
                    let img = rmat_apply(m, v);
                    if img.iter().any(|x| !x.is_zero()) {
                        new_vectors.push(img);
                    }
                }
            }
        }
        // Merge into the per-weight lattices; re-normalize with HNF and
        // collect the genuinely new directions/refinements.
        let mut next_frontier: Vec<Vec<Rat>> = Vec::new();
        let mut grouped: BTreeMap<Vec<i64>, Vec<Vec<Rat>>> = BTreeMap::new();
        for v in new_vectors {
            let w = weight_of_vector(&v, basis_weights)?;
            grouped.entry(w).or_default().push(v);
        }
        for (w, vecs) in grouped {
            let old = by_weight.get(&w).cloned().unwrap_or_default();
            let mut all = old.clone();
            all.extend(vecs);
            let reduced = rational_hnf(&all);
            if reduced != old {
                next_frontier.extend(reduced.iter().cloned());
                by_weight.insert(w, reduced);
            }
        }
        frontier = next_frontier;
    }
    if !frontier.is_empty() {
        return Err(ChevRepError::Construction(
            "divided-power lattice did not stabilize".into(),
        ));
    }
    let total: usize = by_weight.values().map(|v| v.len()).sum();
    if total != dim {
        return Err(ChevRepError::Construction(format!(
            "lattice rank {total} does not fill the module dimension {dim}"
        )));
    }
    Ok(by_weight.into_values().flatten().collect())
}

fn weight_of_vector(v: &[Rat], basis_weights: &[Vec<i64>]) -> Result<Vec<i64>, ChevRepError> {
    let mut w: Option<&Vec<i64>> = None;
    for (row, x) in v.iter().enumerate() {
        if !x.is_zero() {
            match w {
                None => w = Some(&basis_weights[row]),
                Some(prev) => {
                    if prev != &basis_weights[row] {
                        return Err(ChevRepError::Construction(
                            "generator image mixes weight spaces".into(),
                        ));
                    }
                }
            }
        }
    }
    w.cloned()
        .ok_or_else(|| ChevRepError::Construction("zero vector has no weight".into()))
}

/// HNF basis of the lattice generated by rational vectors (clear the
/// common denominator, reduce over ℤ, divide back).
fn rational_hnf(vecs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vecs.is_empty() {
        return vec![];
    }
    let mut denom = BigInt::one();
    for v in vecs {
        for x in v {
            denom = num_integer::Integer::lcm(&denom, x.denom());
        }
    }
    let int_rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.numer() * (&denom / x.denom()))
                .collect()
        })
        .collect();
    let h = hnf_rows(&int_rows);
    h.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| Rat::new(x, denom.clone()))
                .collect()
        })
        .collect()
}

fn flip_basis_sign(rep: &mut RepModule, idx: usize) {
    let dim = rep.weights.len();
    for mats in [&mut rep.e, &mut rep.f] {
        for m in mats.iter_mut() {
            for r in 0..dim {
                for c in 0..dim {
                    if (r == idx) ^ (c == idx) {
                        m[r][c] = -m[r][c].clone();
                    }
                }
            }
        }
    }
}

/// Verify `[e_i, f_j] = δ_ij h_i` (h_i diagonal with the weight pairings)
/// and the Serre relations `ad(e_i)^{1−A[i][j]}(e_j) = 0` (same for f).
fn check_module_axioms(datum: &CartanDatum, rep: &RepModule) -> Result<(), ChevRepError> {
    let dim = rep.weights.len();
    let r = rep.rank;
    let e: Vec<RMat> = rep.e.iter().map(|m| big_matrix_to_rat(m)).collect();
    let f: Vec<RMat> = rep.f.iter().map(|m| big_matrix_to_rat(m)).collect();
    let comm = |a: &RMat, b: &RMat| rmat_sub(&rmat_mul(a, b), &rmat_mul(b, a));
    for i in 0..r {
        for j in 0..r {
            let c = comm(&e[i], &f[j]);
            if i == j {
                let mut h = rmat_zero(dim, dim);
                for (b, w) in rep.weights.iter().enumerate() {
                    h[b][b] = rat_int(w[i]);
                }
                if c != h {
                    return Err(ChevRepError::Construction(format!(
                        "[e_{i}, f_{i}] is not h_{i}"
                    )));
                }
            } else if !rmat_is_zero(&c) {
                return Err(ChevRepError::Construction(format!(
                    "[e_{i}, f_{j}] is nonzero"
                )));
            }
        }
    }
    for mats in [&e, &f] {
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let mut acc = mats[j].clone();
                for _ in 0..(1 - datum.cartan[i][j]) {
                    acc = comm(&mats[i], &acc);
                }
                if !rmat_is_zero(&acc) {
                    return Err(ChevRepError::Construction(format!(
                        "Serre relation fails for (i,j)=({i},{j})"
                    )));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Symbolic one-parameter subgroups, sbar lifts, and minors.
// ---------------------------------------------------------------------

/// Matrix over Laurent polynomials.
pub type PolyMat = Vec<Vec<LaurentPoly>>;

fn poly_mat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let n = a.len();
    let cols = b[0].len();
    let k = b.len();
    let zero = LaurentPoly::zero(
        &a[0][0]
            .vars()
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>(),
    );
    let mut out = vec![vec![zero.clone(); cols]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    out
}

fn int_mat_to_poly(m: &[Vec<BigInt>], vars: &[&str]) -> PolyMat {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| LaurentPoly::constant(vars, x.clone()))
                .collect()
        })
        .collect()
}

/// Divided powers E^n/n! as integer matrices; errors if the integral form
/// is violated.
fn divided_powers_int(m: &[Vec<BigInt>]) -> Vec<Vec<Vec<BigInt>>> {
    let rat = big_matrix_to_rat(m);
    let dim = m.len();
    let tables = divided_power_tables(&[rat], dim);
    tables[0]
        .iter()
        .map(|t| {
            t.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| {
                            assert!(
                                x.denom().is_one(),
                                "divided power not integral: lattice defect"
                            );
                            x.numer().clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl RepModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `x_i(t) = exp(t·e_i)` as a matrix over Laurent polynomials, with `t`
    /// an arbitrary Laurent polynomial in the ambient variables.
    pub fn x_subgroup(&self, i: usize, t: &LaurentPoly) -> PolyMat {
        self.one_param(i, t, true)
    }

    /// `y_i(t) = exp(t·f_i)`.
    pub fn y_subgroup(&self, i: usize, t: &LaurentPoly) -> PolyMat {
        self.one_param(i, t, false)
    }

    fn one_param(&self, i: usize, t: &LaurentPoly, upper: bool) -> PolyMat {
        let vars: Vec<&str> = t.vars().iter().map(|s| s.as_str()).collect();
        let gen = if upper { &self.e[i] } else { &self.f[i] };
        let powers = divided_powers_int(gen);
        let dim = self.dim();
        let mut out = vec![vec![LaurentPoly::zero(&vars); dim]; dim];
        for (d, row) in out.iter_mut().enumerate() {
            row[d] = LaurentPoly::one(&vars);
        }
        let mut tn = LaurentPoly::one(&vars);
        for p in &powers {
            tn = tn.mul(t);
            for r in 0..dim {
                for c in 0..dim {
                    if !p[r][c].is_zero() {
                        out[r][c] =
                            out[r][c].add(&LaurentPoly::constant(&vars, p[r][c].clone()).mul(&tn));
                    }
                }
            }
        }
        out
    }

    /// The exact lift `s̄_i = exp(−e_i)·exp(f_i)·exp(−e_i)` as an integer
    /// matrix.
    pub fn sbar(&self, i: usize) -> Vec<Vec<BigInt>> {
        let dim = self.dim();
        let exp_int = |powers: &[Vec<Vec<BigInt>>], sign: i64| -> Vec<Vec<BigInt>> {
            let mut out = vec![vec![BigInt::zero(); dim]; dim];
            for (d, row) in out.iter_mut().enumerate() {
                row[d] = BigInt::one();
            }
            let mut s = BigInt::one();
            for p in powers {
                s *= BigInt::from(sign);
                for r in 0..dim {
                    for c in 0..dim {
                        if !p[r][c].is_zero() {
                            out[r][c] += &s * &p[r][c];
                        }
                    }
                }
            }
            out
        };
        let int_mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            let mut out = vec![vec![BigInt::zero(); dim]; dim];
            for r in 0..dim {
                for l in 0..dim {
                    if a[r][l].is_zero() {
                        continue;
                    }
                    for c in 0..dim {
                        if !b[l][c].is_zero() {
                            out[r][c] += &a[r][l] * &b[l][c];
                        }
                    }
                }
            }
            out
        };
        let em = exp_int(&divided_powers_int(&self.e[i]), -1);
        let fp = exp_int(&divided_powers_int(&self.f[i]), 1);
        int_mul(&int_mul(&em, &fp), &em)
    }

    /// The lift of a Weyl element along a reduced word: `s̄_{j_1}⋯s̄_{j_l}`.
    pub fn sbar_word(&self, letters: &[usize]) -> Vec<Vec<BigInt>> {
        let dim = self.dim();
        let mut out = vec![vec![BigInt::zero(); dim]; dim];
        for (d, row) in out.iter_mut().enumerate() {
            row[d] = BigInt::one();
        }
        for &j in letters {
            let s = self.sbar(j);
            let mut next = vec![vec![BigInt::zero(); dim]; dim];
            for r in 0..dim {
                for l in 0..dim {
                    if out[r][l].is_zero() {
                        continue;
                    }
                    for c in 0..dim {
                        if !s[l][c].is_zero() {
                            next[r][c] += &out[r][l] * &s[l][c];
                        }
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// Integer matrix inverse (must be unimodular up to sign on this lattice).
fn int_mat_inverse(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inv = rmat_inverse(&big_matrix_to_rat(m)).expect("sbar lifts are invertible");
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    assert!(x.denom().is_one(), "sbar inverse must be integral");
                    x.numer().clone()
                })
                .collect()
        })
        .collect()
}

/// The generalized minor Δ_{uΛ_i, vΛ_i}(x_{j_1}(b_1)⋯x_{j_N}(b_N)) as a
/// polynomial in the `b` variables: the highest-weight matrix coefficient
/// of `s̄(u)⁻¹ · X · s̄(v)`.
///
/// The overall sign of the extremal vectors is normalized so that the
/// coefficients come out positive; mixed signs signal a construction bug.
pub fn generalized_minor(
    datum: &CartanDatum,
    rep: &RepModule,
    u: &WeylElement,
    v: &WeylElement,
    word_x: &[usize],
    b_vars: &[&str],
) -> Result<LaurentPoly, ChevRepError> {
    assert_eq!(word_x.len(), b_vars.len(), "one symbol per letter");
    let u_word = datum.reduced_word_of(u);
    let v_word = datum.reduced_word_of(v);
    let ubar_inv = int_mat_inverse(&rep.sbar_word(&u_word));
    let vbar = rep.sbar_word(&v_word);
    let mut m = int_mat_to_poly(&ubar_inv, b_vars);
    for (k, &j) in word_x.iter().enumerate() {
        let t = LaurentPoly::var_pow(b_vars, b_vars[k], 1);
        m = poly_mat_mul(&m, &rep.x_subgroup(j, &t));
    }
    m = poly_mat_mul(&m, &int_mat_to_poly(&vbar, b_vars));
    let mut minor = m[rep.hw_index][rep.hw_index].clone();
    let signs: Vec<bool> = minor.iter_terms().map(|(_, c)| c.is_negative()).collect();
    if !signs.is_empty() && signs.iter().all(|&s| s) {
        minor = minor.neg();
    } else if signs.iter().any(|&s| s) {
        return Err(ChevRepError::MixedSigns(minor.to_canonical_string()));
    }
    Ok(minor)
}

/// Split a minor into trails: one per monomial, with `d_π` the coefficient
/// and `c_k(π)` the exponents. Verifies the telescoping invariant
/// `source − Σ_k c_k α_{j_k} = target`.
pub fn trails_from_minor(
    datum: &CartanDatum,
    minor: &LaurentPoly,
    word_x: &[usize],
    source: &[i64],
    target: &[i64],
) -> Result<Vec<Trail>, ChevRepError> {
    let mut trails = Vec::new();
    for (exps, coeff) in minor.iter_terms() {
        let mut drop = vec![0i64; datum.rank];
        for (k, &j) in word_x.iter().enumerate() {
            // c_k α_{j_k} in fundamental-weight coordinates.
            for l in 0..datum.rank {
                drop[l] += exps[k] * datum.cartan[l][j];
            }
        }
        let reached: Vec<i64> = source.iter().zip(&drop).map(|(s, d)| s - d).collect();
        if reached != target || exps.iter().any(|&e| e < 0) || !coeff.is_positive() {
            return Err(ChevRepError::Telescoping(exps.clone()));
        }
        trails.push(Trail {
            word: word_x.to_vec(),
            source: source.to_vec(),
            target: target.to_vec(),
            c: exps.clone(),
            d: coeff.clone(),
        });
    }
    Ok(trails)
}

/// The simple-root coordinate function 𝔰_i on the toric chart of `word`:
/// `Δ_{Λ_i, w_0 s_i Λ_i} / Δ_{Λ_i, w_0 Λ_i}` as a Laurent polynomial with
/// positive coefficients; the denominator must be a single monomial.
///
/// The minors are evaluated along the dual word (each letter sent through
/// the Dynkin involution, with the same variable order): the chart element
/// carrying the coordinates is built from lower-triangular one-parameter
/// groups and the two are exchanged by the involution. For self-dual words
/// (G_2, B_2) this is invisible.
pub fn s_i_laurent(
    datum: &CartanDatum,
    rep: &RepModule,
    i: usize,
    word_x: &[usize],
    b_vars: &[&str],
) -> Result<LaurentPoly, ChevRepError> {
    let inv = datum.dynkin_involution();
    let starred: Vec<usize> = word_x.iter().map(|&j| inv[j]).collect();
    let e = datum.weyl_identity();
    let w0 = datum.longest_element();
    let w0si = datum.compose(&w0, &datum.simple_reflection(i));
    let num = generalized_minor(datum, rep, &e, &w0si, &starred, b_vars)?;
    let den = generalized_minor(datum, rep, &e, &w0, &starred, b_vars)?;
    if !den.is_monomial() {
        return Err(ChevRepError::DenominatorNotMonomial(
            den.to_canonical_string(),
        ));
    }
    num.exact_divide(&den)
        .map_err(|e| ChevRepError::Construction(format!("s_i division failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    fn bvars(n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("b_{k}")).collect()
    }

    #[test]
    fn a1_standard_module() {
        let a1 = CartanDatum::build_cartan(Series::A, 1).unwrap();
        let rep = fundamental_rep(&a1, 0).unwrap();
        assert_eq!(rep.dim(), 2);
        // x(t) = [[1,t],[0,1]] and sbar = [[0,−1],[1,0]] on the standard
        // module, in the (highest, lowest) weight basis order.
        let vars = ["t"];
        let t = LaurentPoly::var_pow(&vars, "t", 1);
        let x = rep.x_subgroup(0, &t);
        let hw = rep.hw_index;
        let lw = 1 - hw;
        assert_eq!(x[hw][lw], t);
        assert_eq!(x[hw][hw], LaurentPoly::one(&vars));
        assert!(x[lw][hw].is_zero());
        let s = rep.sbar(0);
        assert_eq!(s[hw][lw], BigInt::from(-1));
        assert_eq!(s[lw][hw], BigInt::from(1));
        assert!(s[hw][hw].is_zero() && s[lw][lw].is_zero());
    }

    #[test]
    fn dimensions_match_weyl_formula() {
        let a3 = CartanDatum::build_cartan(Series::A, 3).unwrap();
        for (i, d) in [(0usize, 4usize), (1, 6), (2, 4)] {
            assert_eq!(fundamental_rep(&a3, i).unwrap().dim(), d);
        }
        let b2 = CartanDatum::build_cartan(Series::B, 2).unwrap();
        assert_eq!(fundamental_rep(&b2, 0).unwrap().dim(), 5);
        assert_eq!(fundamental_rep(&b2, 1).unwrap().dim(), 4);
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        assert_eq!(fundamental_rep(&g2, 1).unwrap().dim(), 7);
        assert_eq!(fundamental_rep(&g2, 0).unwrap().dim(), 14);
    }

    #[test]
    fn g2_lambda1_minor_is_the_monomial() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let rep = fundamental_rep(&g2, 0).unwrap();
        let vars = bvars(6);
        let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let word = [1usize, 0, 1, 0, 1, 0];
        let e = g2.weyl_identity();
        let w0 = g2.longest_element();
        let minor = generalized_minor(&g2, &rep, &e, &w0, &word, &vars_ref).unwrap();
        let expected = LaurentPoly::monomial(&vars_ref, &[0, 1, 3, 2, 3, 1], 1);
        assert_eq!(minor, expected);
    }

    #[test]
    fn g2_s_functions_match_displayed_values() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let vars = bvars(6);
        let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let word = [1usize, 0, 1, 0, 1, 0];
        let rep1 = fundamental_rep(&g2, 0).unwrap();
        let s1 = s_i_laurent(&g2, &rep1, 0, &word, &vars_ref).unwrap();
        assert_eq!(s1, LaurentPoly::var_pow(&vars_ref, "b_6", -1));
        let rep2 = fundamental_rep(&g2, 1).unwrap();
        let s2 = s_i_laurent(&g2, &rep2, 1, &word, &vars_ref).unwrap();
        let mono = |e: &[i64], c: i64| LaurentPoly::monomial(&vars_ref, e, c);
        let expected = mono(&[0, 0, 0, 0, -1, 0], 1)
            .add(&mono(&[0, 0, -2, -1, 1, 1], 1))
            .add(&mono(&[0, -1, -2, 0, 1, 1], 1))
            .add(&mono(&[0, 0, -1, -1, 0, 1], 2))
            .add(&mono(&[-1, -1, -1, 0, 1, 1], 1))
            .add(&mono(&[0, 0, 0, -1, -1, 1], 1));
        assert_eq!(s2, expected);
    }

    #[test]
    fn a3_s_functions_match_displayed_values() {
        let a3 = CartanDatum::build_cartan(Series::A, 3).unwrap();
        let vars = bvars(6);
        let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let word = [2usize, 1, 0, 1, 2, 1];
        let mono = |e: &[i64], c: i64| LaurentPoly::monomial(&vars_ref, e, c);
        // 𝔰_1 = 1/b_3 + b_4/(b_2 b_3) + b_5 b_6/(b_1 b_2 b_3) + b_6/(b_2 b_3).
        let rep1 = fundamental_rep(&a3, 0).unwrap();
        let s1 = s_i_laurent(&a3, &rep1, 0, &word, &vars_ref).unwrap();
        let expect1 = mono(&[0, 0, -1, 0, 0, 0], 1)
            .add(&mono(&[0, -1, -1, 1, 0, 0], 1))
            .add(&mono(&[-1, -1, -1, 0, 1, 1], 1))
            .add(&mono(&[0, -1, -1, 0, 0, 1], 1));
        assert_eq!(s1, expect1);
        // 𝔰_2 = 1/b_6 and 𝔰_3 = 1/b_5 + b_6/(b_4 b_5).
        let rep2 = fundamental_rep(&a3, 1).unwrap();
        let s2 = s_i_laurent(&a3, &rep2, 1, &word, &vars_ref).unwrap();
        assert_eq!(s2, LaurentPoly::var_pow(&vars_ref, "b_6", -1));
        let rep3 = fundamental_rep(&a3, 2).unwrap();
        let s3 = s_i_laurent(&a3, &rep3, 2, &word, &vars_ref).unwrap();
        let expect3 =
            mono(&[0, 0, 0, 0, -1, 0], 1).add(&mono(&[0, 0, 0, -1, -1, 1], 1));
        assert_eq!(s3, expect3);
    }

    #[test]
    fn trail_counts_match_known_values() {
        // Counts of monomials in Δ_{Λ_i, w_0 s_i Λ_i} along the dual word:
        // (4, 1, 2) in type A_3 and (1, 6) for G_2 with a coefficient 2.
        let a3 = CartanDatum::build_cartan(Series::A, 3).unwrap();
        let inv = a3.dynkin_involution();
        let word = [2usize, 1, 0, 1, 2, 1];
        let starred: Vec<usize> = word.iter().map(|&j| inv[j]).collect();
        let vars = bvars(6);
        let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let w0 = a3.longest_element();
        let e = a3.weyl_identity();
        for (i, count) in [(0usize, 4usize), (1, 1), (2, 2)] {
            let rep = fundamental_rep(&a3, i).unwrap();
            let w0si = a3.compose(&w0, &a3.simple_reflection(i));
            let minor =
                generalized_minor(&a3, &rep, &e, &w0si, &starred, &vars_ref).unwrap();
            let source = a3.fundamental_weight(i);
            let target = {
                let si = a3.act_word_on_weight(&[i], &source);
                let w0_word = a3.reduced_word_of(&w0);
                a3.act_word_on_weight(&w0_word, &si)
            };
            let trails =
                trails_from_minor(&a3, &minor, &starred, &source, &target).unwrap();
            assert_eq!(trails.len(), count, "trail count for fundamental weight {i}");
            assert!(trails.iter().all(|t| t.d == BigInt::one()));
        }
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let word = [1usize, 0, 1, 0, 1, 0];
        let w0 = g2.longest_element();
        let e = g2.weyl_identity();
        for (i, count, twos) in [(0usize, 1usize, 0usize), (1, 6, 1)] {
            let rep = fundamental_rep(&g2, i).unwrap();
            let w0si = g2.compose(&w0, &g2.simple_reflection(i));
            let minor =
                generalized_minor(&g2, &rep, &e, &w0si, &word, &vars_ref).unwrap();
            let source = g2.fundamental_weight(i);
            let target = {
                let si = g2.act_word_on_weight(&[i], &source);
                let w0_word = g2.reduced_word_of(&w0);
                g2.act_word_on_weight(&w0_word, &si)
            };
            let trails =
                trails_from_minor(&g2, &minor, &word, &source, &target).unwrap();
            assert_eq!(trails.len(), count);
            let with_two = trails.iter().filter(|t| t.d == BigInt::from(2)).count();
            assert_eq!(with_two, twos);
        }
    }

    #[test]
    fn trivial_minor_is_one() {
        let a2 = CartanDatum::build_cartan(Series::A, 2).unwrap();
        let rep = fundamental_rep(&a2, 0).unwrap();
        let vars = bvars(3);
        let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let e = a2.weyl_identity();
        let minor =
            generalized_minor(&a2, &rep, &e, &e, &[0, 1, 0], &vars_ref).unwrap();
        assert_eq!(minor, LaurentPoly::one(&vars_ref));
    }

    #[test]
    fn sbar_fourth_power_is_plus_minus_one() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let rep = fundamental_rep(&g2, 1).unwrap();
        for i in 0..2 {
            let s = rep.sbar(i);
            let s2 = mat_mul_int(&s, &s);
            let s4 = mat_mul_int(&s2, &s2);
            for r in 0..rep.dim() {
                for c in 0..rep.dim() {
                    let expect = if r == c { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(s4[r][c], expect, "sbar^4 must be the identity");
                }
            }
        }
    }

    fn mat_mul_int(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for r in 0..n {
            for l in 0..n {
                for c in 0..n {
                    out[r][c] += &a[r][l] * &b[l][c];
                }
            }
        }
        out
    }
}
