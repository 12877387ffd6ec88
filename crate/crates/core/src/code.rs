//! Linear codes over `F_q`: generator matrices, brute-force parameters,
//! Reed–Solomon codes and the q-ary symmetric channel.
//!
//! Messages are enumerated the same way field elements are: a message
//! `(m_0, .., m_(k-1))` has index `sum index(m_j) * q^j`, so the first
//! coordinate varies fastest. Everything that depends on an order (tie
//! breaking in [`nearest_codeword`], for instance) uses this one.

use std::fmt;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{enumerate_field, FieldElement, FieldError, FieldSpec};

/// Budget on the number of codewords scanned by [`min_distance_bruteforce`].
pub const MIN_DISTANCE_BUDGET: u64 = 1 << 24;

/// Budget on the number of codewords scanned by [`nearest_codeword`].
pub const DECODE_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("entries belong to different fields")]
    SpecMismatch,
    #[error("generator matrix must be non-empty and rectangular")]
    MalformedMatrix,
    #[error("generator rows are linearly dependent (rank {rank} < {k} rows)")]
    RankDeficient { rank: usize, k: usize },
    #[error("code has dimension 0")]
    ZeroDimensional,
    #[error("{count} codewords exceed the enumeration budget {budget}")]
    BudgetExceeded { count: u64, budget: u64 },
    #[error("evaluation points must be pairwise distinct")]
    DuplicateEvaluationPoint,
    #[error("need 1 <= k <= n <= q, got k = {k}, n = {n}, q = {q}")]
    KOutOfRange { k: usize, n: usize, q: u64 },
    #[error("minimum distance is only a lower bound")]
    DNotExact,
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Hamming distance: number of coordinates where `x` and `y` differ.
pub fn hamming(x: &[FieldElement], y: &[FieldElement]) -> Result<usize, CodeError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(x.len(), y.len()));
    }
    let mut d = 0;
    for (a, b) in x.iter().zip(y) {
        if a.spec() != b.spec() {
            return Err(CodeError::SpecMismatch);
        }
        if a != b {
            d += 1;
        }
    }
    Ok(d)
}

/// Number of nonzero coordinates.
pub fn weight(x: &[FieldElement]) -> usize {
    x.iter().filter(|a| !a.is_zero()).count()
}

/// Rank of a matrix over `F_q` by Gaussian elimination.
pub fn code_dimension(gen: &[Vec<FieldElement>]) -> usize {
    let mut rows: Vec<Vec<FieldElement>> = gen.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|&a| a * inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col];
                for (a, &b) in row.iter_mut().zip(&pivot_row) {
                    *a = *a - factor * b;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A linear code given by a full-rank `k x n` generator matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FieldSpec,
    gen: Vec<Vec<FieldElement>>,
}

impl LinearCode {
    pub fn new(field: FieldSpec, gen: Vec<Vec<FieldElement>>) -> Result<Self, CodeError> {
        let Some(first) = gen.first() else {
            return Err(CodeError::ZeroDimensional);
        };
        let n = first.len();
        if n == 0 || gen.iter().any(|r| r.len() != n) {
            return Err(CodeError::MalformedMatrix);
        }
        if gen.iter().flatten().any(|a| *a.spec() != field) {
            return Err(CodeError::SpecMismatch);
        }
        let rank = code_dimension(&gen);
        if rank < gen.len() {
            return Err(CodeError::RankDeficient { rank, k: gen.len() });
        }
        Ok(LinearCode { field, gen })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.gen
    }

    pub fn len(&self) -> usize {
        self.gen[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.gen.len()
    }

    /// `q^k`, saturating.
    pub fn codeword_count(&self) -> u64 {
        self.field
            .order()
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u64::MAX)
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if message.len() != self.dimension() {
            return Err(CodeError::LengthMismatch(message.len(), self.dimension()));
        }
        let mut word = vec![self.field.zero(); self.len()];
        for (&coef, row) in message.iter().zip(&self.gen) {
            if *coef.spec() != self.field {
                return Err(CodeError::SpecMismatch);
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = *w + coef * g;
            }
        }
        Ok(word)
    }

    /// The message with the given enumeration index.
    pub fn message_at(&self, mut index: u64) -> Vec<FieldElement> {
        let q = self.field.order();
        (0..self.dimension())
            .map(|_| {
                let e = self.field.from_index(index % q);
                index /= q;
                e
            })
            .collect()
    }

    /// Same row space, checked by mutual rank.
    pub fn same_code_as(&self, other: &LinearCode) -> bool {
        if self.field != other.field
            || self.len() != other.len()
            || self.dimension() != other.dimension()
        {
            return false;
        }
        let mut stacked = self.gen.clone();
        stacked.extend(other.gen.iter().cloned());
        code_dimension(&stacked) == self.dimension()
    }

    /// Visits every codeword in message-enumeration order.
    ///
    /// Keeps one partial sum per generator row, so each step costs O(n)
    /// amortized instead of O(kn).
    pub fn for_each_codeword<F>(&self, mut visit: F) -> Result<(), CodeError>
    where
        F: FnMut(u64, &[FieldElement]) -> ControlFlow<()>,
    {
        let elems = enumerate_field(&self.field)?;
        let q = elems.len();
        let k = self.dimension();
        let n = self.len();
        // multiples[j][a] = elems[a] * row_j
        let multiples: Vec<Vec<Vec<FieldElement>>> = self
            .gen
            .iter()
            .map(|row| {
                elems
                    .iter()
                    .map(|&a| row.iter().map(|&g| a * g).collect())
                    .collect()
            })
            .collect();
        let zero_word = vec![self.field.zero(); n];
        // partial[j] = sum_{i >= j} m_i row_i, partial[k] = 0
        let mut partial = vec![zero_word; k + 1];
        let mut digits = vec![0usize; k];
        let mut index = 0u64;
        loop {
            if let ControlFlow::Break(()) = visit(index, &partial[0]) {
                return Ok(());
            }
            let Some(j) = (0..k).find(|&j| digits[j] + 1 < q) else {
                return Ok(());
            };
            digits[j] += 1;
            for d in digits.iter_mut().take(j) {
                *d = 0;
            }
            let (lower, upper) = partial.split_at_mut(j + 1);
            for ((out, &a), &b) in lower[j]
                .iter_mut()
                .zip(&upper[0])
                .zip(&multiples[j][digits[j]])
            {
                *out = a + b;
            }
            for i in (0..j).rev() {
                let (lo, hi) = partial.split_at_mut(i + 1);
                lo[i].copy_from_slice(&hi[0]);
            }
            index += 1;
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode[n={}, k={}, q={}]",
            self.len(),
            self.dimension(),
            self.field.order()
        )
    }
}

/// Exact minimum distance by enumerating all `q^k - 1` nonzero codewords.
pub fn min_distance_bruteforce(code: &LinearCode) -> Result<usize, CodeError> {
    if code.dimension() == 0 {
        return Err(CodeError::ZeroDimensional);
    }
    let count = code.codeword_count();
    if count > MIN_DISTANCE_BUDGET {
        return Err(CodeError::BudgetExceeded {
            count,
            budget: MIN_DISTANCE_BUDGET,
        });
    }
    let mut best = code.len();
    code.for_each_codeword(|index, word| {
        if index > 0 {
            best = best.min(weight(word));
            if best == 1 {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// Generator of `RS_k(alphas)`: row `i` holds the evaluations of `x^i`.
pub fn rs_generator(alphas: &[FieldElement], k: usize) -> Result<LinearCode, CodeError> {
    let field = *alphas
        .first()
        .ok_or(CodeError::KOutOfRange { k, n: 0, q: 0 })?
        .spec();
    let n = alphas.len();
    if alphas.iter().any(|a| *a.spec() != field) {
        return Err(CodeError::SpecMismatch);
    }
    if k < 1 || k > n || n as u64 > field.order() {
        return Err(CodeError::KOutOfRange {
            k,
            n,
            q: field.order(),
        });
    }
    for i in 0..n {
        if alphas[i + 1..].contains(&alphas[i]) {
            return Err(CodeError::DuplicateEvaluationPoint);
        }
    }
    let gen = (0..k as u64)
        .map(|i| alphas.iter().map(|a| a.pow(i)).collect())
        .collect();
    LinearCode::new(field, gen)
}

/// `[n, k, d]_q` together with whether `d` is exact or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    #[serde(skip)]
    pub q: u64,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: usize, d_exact: bool, q: u64) -> Result<Self, CodeError> {
        if d < 1 || d > n {
            return Err(CodeError::InvalidParams(format!(
                "need 1 <= d <= n, got d = {d}, n = {n}"
            )));
        }
        if k > n {
            return Err(CodeError::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        Ok(CodeParams {
            n,
            k,
            d,
            d_exact,
            q,
        })
    }

    /// Exact parameters of a code, by brute force.
    pub fn of_code(code: &LinearCode) -> Result<Self, CodeError> {
        let d = min_distance_bruteforce(code)?;
        CodeParams::new(code.len(), code.dimension(), d, true, code.field().order())
    }

    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.k as u64, self.n as u64)
    }

    pub fn relative_distance(&self) -> Ratio<u64> {
        Ratio::new(self.d as u64, self.n as u64)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.d_exact { "=" } else { ">=" };
        write!(
            f,
            "[n={}, k={}, d{}{}]_{}",
            self.n, self.k, rel, self.d, self.q
        )
    }
}

/// Checks `k + d <= n + 1`. Only meaningful for an exact `d`.
pub fn singleton_holds(params: &CodeParams) -> Result<bool, CodeError> {
    if !params.d_exact {
        return Err(CodeError::DNotExact);
    }
    Ok(params.k + params.d <= params.n + 1)
}

/// Codeword closest to `received`, ties resolved in favour of the smallest message index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: Vec<FieldElement>,
    pub codeword: Vec<FieldElement>,
    pub distance: usize,
}

/// Maximum-likelihood decoding by exhaustive search.
pub fn nearest_codeword(
    code: &LinearCode,
    received: &[FieldElement],
) -> Result<Decoded, CodeError> {
    if received.len() != code.len() {
        return Err(CodeError::LengthMismatch(received.len(), code.len()));
    }
    if received.iter().any(|a| a.spec() != code.field()) {
        return Err(CodeError::SpecMismatch);
    }
    let count = code.codeword_count();
    if count > DECODE_BUDGET {
        return Err(CodeError::BudgetExceeded {
            count,
            budget: DECODE_BUDGET,
        });
    }
    let mut best: Option<(u64, usize, Vec<FieldElement>)> = None;
    code.for_each_codeword(|index, word| {
        let d = word.iter().zip(received).filter(|(a, b)| a != b).count();
        if best.as_ref().is_none_or(|(_, bd, _)| d < *bd) {
            best = Some((index, d, word.to_vec()));
            if d == 0 {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    let (index, distance, codeword) = best.expect("a code has at least one codeword");
    Ok(Decoded {
        message: code.message_at(index),
        codeword,
        distance,
    })
}

/// q-ary symmetric channel: a symbol stays intact with probability
/// `1 - p_err`, otherwise it is shifted by a uniformly random nonzero value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    field: FieldSpec,
    p_err: f64,
    seed: u64,
}

impl ChannelSpec {
    pub fn new(field: FieldSpec, p_err: f64, seed: u64) -> Result<Self, CodeError> {
        let q = field.order() as f64;
        let max = 1.0 - 1.0 / q;
        if !p_err.is_finite() || p_err < 0.0 || p_err > max + 1e-12 {
            return Err(CodeError::InvalidChannel(format!(
                "p_err = {p_err} outside [0, 1 - 1/q] = [0, {max}]"
            )));
        }
        Ok(ChannelSpec {
            field,
            p_err: p_err.min(max),
            seed,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn p_err(&self) -> f64 {
        self.p_err
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh error stream starting from the seed.
    pub fn sampler(&self) -> ChannelSampler {
        ChannelSampler {
            spec: *self,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
        }
    }
}

/// Stream of error words for one [`ChannelSpec`].
///
/// Randomness comes from ChaCha8 seeded with the spec's 64-bit seed
/// (`rand_chacha::ChaCha8Rng::seed_from_u64`); there is no global RNG state.
pub struct ChannelSampler {
    spec: ChannelSpec,
    rng: ChaCha8Rng,
}

impl ChannelSampler {
    pub fn sample(&mut self, n: usize) -> Vec<FieldElement> {
        let q = self.spec.q();
        (0..n)
            .map(|_| {
                if self.spec.p_err > 0.0 && self.rng.random::<f64>() < self.spec.p_err {
                    self.spec.field.from_index(self.rng.random_range(1..q))
                } else {
                    self.spec.field.zero()
                }
            })
            .collect()
    }
}

/// One error word of length `n`, reproducible from the spec's seed.
pub fn channel_sample(spec: &ChannelSpec, n: usize) -> Vec<FieldElement> {
    spec.sampler().sample(n)
}

/// Error weights of `trials` consecutive words drawn from one stream.
pub fn channel_weights(spec: &ChannelSpec, n: usize, trials: usize) -> Vec<usize> {
    let mut sampler = spec.sampler();
    (0..trials).map(|_| weight(&sampler.sample(n))).collect()
}
