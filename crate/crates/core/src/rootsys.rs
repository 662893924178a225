//! Root-system and Weyl-group combinatorics for series A_r, B_2, G_2,
//! generic over a Cartan matrix, including convex orders of the positive
//! roots induced by reduced words for the longest element.
//!
//! Coordinate conventions, fixed once to avoid normalization ambiguity:
//! roots carry simple-root coordinates, coroots carry simple-coroot
//! coordinates, weights carry fundamental-weight coordinates (their
//! pairings with the simple coroots), and coweights carry
//! fundamental-coweight coordinates (the pairings of the simple roots
//! against them). The Cartan matrix is `A[i][j] = ⟨α_j, α_i^∨⟩`.

use std::fmt;

/// Errors from root-system construction and word handling.
#[derive(Debug, thiserror::Error)]
pub enum RootSysError {
    #[error("unsupported series/rank: {0}{1}")]
    Unsupported(char, usize),
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("word does not express the longest element: {0:?}")]
    NotLongest(Vec<usize>),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("letter {0} out of range for rank {1}")]
    BadLetter(usize, usize),
}

/// Series label for the supported Cartan types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Series {
    A,
    B,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::B => write!(f, "B"),
            Series::G => write!(f, "G"),
        }
    }
}

/// A root system of finite type together with its Weyl group data.
///
/// The full root list is enumerated once at construction; Weyl elements are
/// represented as permutations of that list.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Symmetrizer d_i with d_i·cartan[i][j] symmetric (root lengths).
    pub symmetrizer: Vec<i64>,
    /// All roots in simple-root coordinates; positive roots first.
    pub roots: Vec<Vec<i64>>,
    /// Number of positive roots N.
    pub num_positive: usize,
}

/// A Weyl-group element, stored as a permutation of the root list of its
/// Cartan datum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl CartanDatum {
    /// Standard Cartan data. Supported: A_r (r ≥ 1), B_2, G_2. For G_2 the
    /// convention is that α_1 is the long simple root and α_2 the short
    /// one, so `⟨α_2, α_1^∨⟩ = −1` and `⟨α_1, α_2^∨⟩ = −3`.
    pub fn build_cartan(series: Series, rank: usize) -> Result<Self, RootSysError> {
        let (cartan, symmetrizer): (Vec<Vec<i64>>, Vec<i64>) = match (series, rank) {
            (Series::A, r) if r >= 1 => {
                let mut a = vec![vec![0i64; r]; r];
                for i in 0..r {
                    a[i][i] = 2;
                    if i + 1 < r {
                        a[i][i + 1] = -1;
                        a[i + 1][i] = -1;
                    }
                }
                (a, vec![1; r])
            }
            (Series::B, 2) => {
                // α_1 long, α_2 short: ⟨α_2, α_1^∨⟩ = −1, ⟨α_1, α_2^∨⟩ = −2.
                (vec![vec![2, -1], vec![-2, 2]], vec![2, 1])
            }
            (Series::G, 2) => {
                // α_1 long, α_2 short: ⟨α_2, α_1^∨⟩ = −1, ⟨α_1, α_2^∨⟩ = −3.
                (vec![vec![2, -1], vec![-3, 2]], vec![3, 1])
            }
            (s, r) => {
                let c = match s {
                    Series::A => 'A',
                    Series::B => 'B',
                    Series::G => 'G',
                };
                return Err(RootSysError::Unsupported(c, r));
            }
        };
        let roots = enumerate_roots(&cartan);
        let num_positive = roots.len() / 2;
        Ok(CartanDatum {
            series,
            rank,
            cartan,
            symmetrizer,
            roots,
            num_positive,
        })
    }

    /// `⟨γ, α_i^∨⟩` for a root γ in simple-root coordinates.
    pub fn pairing_with_simple_coroot(&self, gamma: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * gamma[j]).sum()
    }

    /// Index of a root vector in the root list.
    pub fn root_index(&self, gamma: &[i64]) -> Result<usize, RootSysError> {
        self.roots
            .iter()
            .position(|r| r == gamma)
            .ok_or_else(|| RootSysError::NotARoot(gamma.to_vec()))
    }

    /// `s_i(γ) = γ − ⟨γ, α_i^∨⟩ α_i` on simple-root coordinates.
    pub fn reflect_root(&self, i: usize, gamma: &[i64]) -> Vec<i64> {
        let c = self.pairing_with_simple_coroot(gamma, i);
        let mut out = gamma.to_vec();
        out[i] -= c;
        out
    }

    /// The identity Weyl element.
    pub fn weyl_identity(&self) -> WeylElement {
        WeylElement {
            perm: (0..self.roots.len()).collect(),
        }
    }

    /// The simple reflection s_i as a permutation of the root list.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        assert!(i < self.rank, "letter {i} out of range");
        let perm = self
            .roots
            .iter()
            .map(|gamma| {
                let image = self.reflect_root(i, gamma);
                self.root_index(&image).expect("reflection permutes roots")
            })
            .collect();
        WeylElement { perm }
    }

    /// `w = s_{letters[0]} ⋯ s_{letters[last]}` (left-to-right product).
    pub fn weyl_from_word(&self, letters: &[usize]) -> Result<WeylElement, RootSysError> {
        let mut w = self.weyl_identity();
        for &i in letters {
            if i >= self.rank {
                return Err(RootSysError::BadLetter(i, self.rank));
            }
            w = self.compose(&w, &self.simple_reflection(i));
        }
        Ok(w)
    }

    /// `(u∘v)(γ) = u(v(γ))`.
    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        WeylElement {
            perm: (0..self.roots.len()).map(|k| u.perm[v.perm[k]]).collect(),
        }
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut perm = vec![0; w.perm.len()];
        for (k, &img) in w.perm.iter().enumerate() {
            perm[img] = k;
        }
        WeylElement { perm }
    }

    /// Length = number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.num_positive)
            .filter(|&k| w.perm[k] >= self.num_positive)
            .count()
    }

    /// Image of the root with index `k` under `w`.
    pub fn act_on_root_index(&self, w: &WeylElement, k: usize) -> usize {
        w.perm[k]
    }

    /// Image of a root vector under `w`, in simple-root coordinates.
    pub fn act_on_root(&self, w: &WeylElement, gamma: &[i64]) -> Result<Vec<i64>, RootSysError> {
        let k = self.root_index(gamma)?;
        Ok(self.roots[w.perm[k]].clone())
    }

    /// Action on a weight in fundamental-weight coordinates:
    /// `(wμ)_i = ⟨w μ, α_i^∨⟩ = ⟨μ, (w⁻¹ α_i)^∨⟩` computed through the
    /// simple-root expansion of `w⁻¹ α_i`... for a single reflection,
    /// `s_i(μ)_j = μ_j − μ_i · A[j][i]`.
    pub fn reflect_weight(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| mu[j] - mu[i] * self.cartan[j][i])
            .collect()
    }

    /// Action on a coweight in fundamental-coweight coordinates:
    /// `s_i(ν)_j = ν_j − ν_i · A[i][j]`.
    pub fn reflect_coweight(&self, i: usize, nu: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| nu[j] - nu[i] * self.cartan[i][j])
            .collect()
    }

    /// Apply `w` (given by a reduced word, leftmost letter acting last...
    /// i.e. the word spells `w = s_{l_1}⋯s_{l_k}` and the action is the
    /// product acting on the left) to a weight in fundamental-weight
    /// coordinates.
    pub fn act_word_on_weight(&self, letters: &[usize], mu: &[i64]) -> Vec<i64> {
        let mut out = mu.to_vec();
        for &i in letters.iter().rev() {
            out = self.reflect_weight(i, &out);
        }
        out
    }

    /// Same as `act_word_on_weight` for coweights.
    pub fn act_word_on_coweight(&self, letters: &[usize], nu: &[i64]) -> Vec<i64> {
        let mut out = nu.to_vec();
        for &i in letters.iter().rev() {
            out = self.reflect_coweight(i, &out);
        }
        out
    }

    /// A reduced word for `w`, extracted by the descent algorithm.
    pub fn reduced_word_of(&self, w: &WeylElement) -> Vec<usize> {
        let mut letters = Vec::new();
        let mut cur = w.clone();
        loop {
            let len = self.length(&cur);
            if len == 0 {
                break;
            }
            // Find i with cur(α_i) < 0; then cur·s_i is shorter and i is
            // the last letter of some reduced word.
            let i = (0..self.rank)
                .find(|&i| {
                    let idx = self.root_index(&simple_root(self.rank, i)).unwrap();
                    cur.perm[idx] >= self.num_positive
                })
                .expect("nonidentity element has a descent");
            cur = self.compose(&cur, &self.simple_reflection(i));
            letters.push(i);
        }
        letters.reverse();
        letters
    }

    /// The longest element w_0.
    pub fn longest_element(&self) -> WeylElement {
        // Repeatedly apply any available left-descent-increasing reflection.
        let mut w = self.weyl_identity();
        loop {
            let len = self.length(&w);
            if len == self.num_positive {
                return w;
            }
            let i = (0..self.rank)
                .find(|&i| {
                    let cand = self.compose(&w, &self.simple_reflection(i));
                    self.length(&cand) > len
                })
                .expect("can always increase length below N");
            w = self.compose(&w, &self.simple_reflection(i));
        }
    }

    /// The Dynkin involution i ↦ i* defined by w_0(α_i) = −α_{i*}.
    pub fn dynkin_involution(&self) -> Vec<usize> {
        let w0 = self.longest_element();
        (0..self.rank)
            .map(|i| {
                let idx = self.root_index(&simple_root(self.rank, i)).unwrap();
                let img = &self.roots[w0.perm[idx]];
                let neg: Vec<i64> = img.iter().map(|x| -x).collect();
                (0..self.rank)
                    .position(|j| neg == simple_root(self.rank, j))
                    .expect("w_0 sends simple roots to negatives of simple roots")
            })
            .collect()
    }

    /// `α^∨ = 2α/(α,α)` in simple-coroot coordinates: for `γ = Σ n_j α_j`,
    /// the coefficient of `α_j^∨` is `n_j d_j / d_γ` with
    /// `d_γ = (γ,γ)/2`.
    pub fn coroot_of(&self, gamma: &[i64]) -> Result<Vec<i64>, RootSysError> {
        self.root_index(gamma)?;
        // (γ,γ) = Σ_{i,j} n_i n_j (α_i,α_j) with (α_i,α_j) = d_i A[i][j].
        let mut norm2 = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                norm2 += gamma[i] * gamma[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        let d_gamma = norm2 / 2;
        let coords: Vec<i64> = (0..self.rank)
            .map(|j| {
                let num = gamma[j] * self.symmetrizer[j];
                assert_eq!(num % d_gamma, 0, "coroot coordinates must be integral");
                num / d_gamma
            })
            .collect();
        Ok(coords)
    }

    /// ⟨weight (fundamental-weight coords), coroot (simple-coroot coords)⟩.
    pub fn pairing(&self, weight: &[i64], coroot: &[i64]) -> i64 {
        weight.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// ρ in fundamental-weight coordinates (all ones).
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// Λ_i in fundamental-weight coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Λ_i^∨ in fundamental-coweight coordinates.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }
}

fn simple_root(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    v[i] = 1;
    v
}

/// Enumerate all roots by closing the simple roots under simple
/// reflections; positive roots are listed first, sorted by height then
/// lexicographically, followed by their negatives in matching order.
fn enumerate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut set: Vec<Vec<i64>> = (0..rank).map(|i| simple_root(rank, i)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = set.clone();
        for gamma in &snapshot {
            for i in 0..rank {
                let c: i64 = (0..rank).map(|j| cartan[i][j] * gamma[j]).sum();
                let mut img = gamma.clone();
                img[i] -= c;
                let pos: Vec<i64> = if img.iter().all(|&x| x >= 0) {
                    img
                } else {
                    img.iter().map(|x| -x).collect()
                };
                if pos.iter().all(|&x| x >= 0) && !set.contains(&pos) {
                    set.push(pos);
                    changed = true;
                }
            }
        }
    }
    let height = |v: &Vec<i64>| -> i64 { v.iter().sum() };
    set.sort_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b)));
    let mut all = set.clone();
    all.extend(set.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i64>>()));
    all
}

/// A reduced word together with the Weyl element it expresses.
#[derive(Clone)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub target: WeylElement,
}

impl ReducedWord {
    /// Build and validate: the letter product must be reduced (length of
    /// the target equals the word length).
    pub fn new(datum: &CartanDatum, letters: &[usize]) -> Result<Self, RootSysError> {
        let target = datum.weyl_from_word(letters)?;
        if datum.length(&target) != letters.len() {
            return Err(RootSysError::NotReduced(letters.to_vec()));
        }
        Ok(ReducedWord {
            letters: letters.to_vec(),
            target,
        })
    }
}

/// The convex order of Φ⁺ induced by a reduced word for w_0.
#[derive(Clone)]
pub struct ConvexOrder {
    pub word: ReducedWord,
    /// γ_1, …, γ_N in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// γ_k^∨ in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// β_k = s_{i_1}⋯s_{i_{k−1}}(α_{i_k}^∨) in simple-coroot coordinates.
    pub betas: Vec<Vec<i64>>,
}

/// Compute the convex order `γ_j = s_{i_N}⋯s_{i_{j+1}}(α_{i_j})` for a
/// reduced word of w_0, together with the coroot lists.
pub fn convex_order(datum: &CartanDatum, letters: &[usize]) -> Result<ConvexOrder, RootSysError> {
    let word = ReducedWord::new(datum, letters)?;
    let n = datum.num_positive;
    if letters.len() != n || datum.length(&word.target) != n {
        return Err(RootSysError::NotLongest(letters.to_vec()));
    }
    let mut roots = Vec::with_capacity(n);
    for j in 0..n {
        let mut gamma = simple_root(datum.rank, letters[j]);
        // Innermost reflection first: s_{i_{j+1}} is applied to α_{i_j}
        // before s_{i_{j+2}}, …, s_{i_N}.
        for &i in &letters[j + 1..] {
            gamma = datum.reflect_root(i, &gamma);
        }
        roots.push(gamma);
    }
    // The list must be a permutation of Φ⁺.
    {
        let mut seen = vec![false; n];
        for gamma in &roots {
            let idx = datum.root_index(gamma)?;
            if idx >= n || seen[idx] {
                return Err(RootSysError::NotLongest(letters.to_vec()));
            }
            seen[idx] = true;
        }
    }
    let coroots = roots
        .iter()
        .map(|g| datum.coroot_of(g).expect("convex-order roots have coroots"))
        .collect();
    // β_k = s_{i_1}⋯s_{i_{k−1}}(α_{i_k}^∨): reflect the simple coroot by
    // the prefix of the word. Coroot coordinates transform by
    // s_i(ν)_j = ν_j − ⟨α_i, ν⟩ δ... on simple-coroot coordinates c the
    // reflection is c_j ↦ c_j − (Σ_l A[l][j]? ) — use the coweight rule:
    // for ν = Σ c_l α_l^∨, ⟨α_i, ν⟩ = Σ_l c_l A[l][i], and
    // s_i(ν) = ν − ⟨α_i, ν⟩ α_i^∨.
    let mut betas = Vec::with_capacity(n);
    for k in 0..n {
        let mut beta = simple_root(datum.rank, letters[k]); // reused as coroot coords
        for &i in letters[..k].iter().rev() {
            let pair: i64 = (0..datum.rank).map(|l| beta[l] * datum.cartan[l][i]).sum();
            beta[i] -= pair;
        }
        betas.push(beta);
    }
    Ok(ConvexOrder {
        word,
        roots,
        coroots,
        betas,
    })
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({:?})", self.perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_examples() {
        let a1 = CartanDatum::build_cartan(Series::A, 1).unwrap();
        assert_eq!(a1.cartan, vec![vec![2]]);
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
        let a3 = CartanDatum::build_cartan(Series::A, 3).unwrap();
        assert_eq!(
            a3.cartan,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        assert!(CartanDatum::build_cartan(Series::B, 3).is_err());
    }

    #[test]
    fn g2_convex_order_matches_displayed_list() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let order = convex_order(&g2, &[1, 0, 1, 0, 1, 0]).unwrap();
        let expected = vec![
            vec![0, 1],
            vec![1, 3],
            vec![1, 2],
            vec![2, 3],
            vec![1, 1],
            vec![1, 0],
        ];
        assert_eq!(order.roots, expected);
    }

    #[test]
    fn a3_convex_order_matches_displayed_list() {
        let a3 = CartanDatum::build_cartan(Series::A, 3).unwrap();
        let order = convex_order(&a3, &[2, 1, 0, 1, 2, 1]).unwrap();
        let expected = vec![
            vec![1, 0, 0],
            vec![1, 1, 0],
            vec![1, 1, 1],
            vec![0, 0, 1],
            vec![0, 1, 1],
            vec![0, 1, 0],
        ];
        assert_eq!(order.roots, expected);
    }

    #[test]
    fn a1_convex_order() {
        let a1 = CartanDatum::build_cartan(Series::A, 1).unwrap();
        let order = convex_order(&a1, &[0]).unwrap();
        assert_eq!(order.roots, vec![vec![1]]);
    }

    #[test]
    fn g2_long_coroot() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        assert_eq!(g2.coroot_of(&[2, 3]).unwrap(), vec![2, 1]);
        assert_eq!(g2.coroot_of(&[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(g2.coroot_of(&[0, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn a2_coroot_simply_laced() {
        let a2 = CartanDatum::build_cartan(Series::A, 2).unwrap();
        assert_eq!(a2.coroot_of(&[1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn g2_weight_coefficients_for_resonance_kappa() {
        // For the word (2,1,2,1,2,1): the α_1^∨ coefficients of γ_k^∨ for
        // k = 2..6 weighted by (m_2,…,m_6) give m_2+3m_3+2m_4+3m_5+m_6.
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        let order = convex_order(&g2, &[1, 0, 1, 0, 1, 0]).unwrap();
        let alpha1_coeffs: Vec<i64> = order.coroots.iter().map(|c| c[0]).collect();
        assert_eq!(alpha1_coeffs, vec![0, 1, 3, 2, 3, 1]);
    }

    #[test]
    fn dynkin_involution_properties() {
        for (series, rank, word) in [
            (Series::G, 2, vec![1usize, 0, 1, 0, 1, 0]),
            (Series::A, 3, vec![2, 1, 0, 1, 2, 1]),
            (Series::B, 2, vec![0, 1, 0, 1]),
        ] {
            let datum = CartanDatum::build_cartan(series, rank).unwrap();
            let inv = datum.dynkin_involution();
            for i in 0..rank {
                assert_eq!(inv[inv[i]], i, "i** = i");
            }
            // The (i*)-convex order is the image of the i-order under −w_0.
            let order = convex_order(&datum, &word).unwrap();
            let dual_word: Vec<usize> = word.iter().map(|&i| inv[i]).collect();
            let dual = convex_order(&datum, &dual_word).unwrap();
            let w0 = datum.longest_element();
            for (g, h) in order.roots.iter().zip(&dual.roots) {
                let img = datum.act_on_root(&w0, g).unwrap();
                let neg: Vec<i64> = img.iter().map(|x| -x).collect();
                assert_eq!(&neg, h);
            }
        }
    }

    #[test]
    fn every_g2_reduced_word_gives_bijection() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        // The two reduced words of w_0 in rank 2 types are the alternating
        // words starting with each letter.
        for letters in [[0usize, 1, 0, 1, 0, 1], [1, 0, 1, 0, 1, 0]] {
            let order = convex_order(&g2, &letters).unwrap();
            let mut sorted = order.roots.clone();
            sorted.sort();
            let mut expected: Vec<Vec<i64>> = g2.roots[..g2.num_positive].to_vec();
            expected.sort();
            assert_eq!(sorted, expected);
        }
    }

    #[test]
    fn non_reduced_word_rejected() {
        let g2 = CartanDatum::build_cartan(Series::G, 2).unwrap();
        assert!(ReducedWord::new(&g2, &[0, 0]).is_err());
        assert!(convex_order(&g2, &[0, 1, 0, 1, 0, 0]).is_err());
    }
}
