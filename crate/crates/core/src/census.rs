//! Counting normal forms and the matrices they compute.
//!
//! `M_n` is the set of unitaries reachable with at most `n` T gates and
//! `M_=n = M_n \ M_(n-1)`. Normal forms are enumerated directly from their
//! grammar; the matrix sets are rebuilt independently by closing the
//! Clifford group under `m ↦ c·T·m`, without consulting the normalizer.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{CliffordId, Generator, GroupTable};
use crate::normalizer::{Block, NormalForm, Normalizer};
use crate::ring::UMat2;

/// Largest T budget the brute-force oracle accepts by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 4;

/// `|M_n| = 192·(3·2ⁿ − 2)`, or with `exact`, `|M_=n| = 576·2ⁿ⁻¹` (192 at `n = 0`).
pub fn count_closed_form(n: u32, exact: bool) -> BigUint {
    let pow = |e: u32| BigUint::from(1u8) << e;
    match (exact, n) {
        (true, 0) => BigUint::from(192u32),
        (true, n) => BigUint::from(576u32) * pow(n - 1),
        (false, n) => BigUint::from(192u32) * (BigUint::from(3u8) * pow(n) - 2u8),
    }
}

/// Block sequences of length `k`, in lexicographic order: the first block
/// is any of `T`, `HT`, `PHT`, the rest are `HT` or `PHT`.
pub fn block_sequences(k: usize) -> impl Iterator<Item = Vec<Block>> {
    let firsts: &[Block] = if k == 0 { &[Block::T] } else { &Block::ALL };
    let inner = if k == 0 { 1u64 } else { 1u64 << (k - 1) };
    firsts.iter().flat_map(move |&first| {
        (0..inner).map(move |mask| {
            if k == 0 {
                return Vec::new();
            }
            let mut seq = Vec::with_capacity(k);
            seq.push(first);
            for bit in (0..k - 1).rev() {
                seq.push(Block::INNER[((mask >> bit) & 1) as usize]);
            }
            seq
        })
    })
}

/// Every normal form with at most `n` blocks, each exactly once, ordered by
/// block count, then block sequence, then Clifford tail.
pub fn enumerate_normal_forms(n: usize, table: &GroupTable) -> impl Iterator<Item = NormalForm> {
    let size = table.len() as u32;
    (0..=n).flat_map(move |k| {
        block_sequences(k).flat_map(move |blocks| {
            (0..size).map(move |i| NormalForm { blocks: blocks.clone(), cliff: CliffordId(i) })
        })
    })
}

/// `M_=0, M_=1, …, M_=n`, computed as `M_=k = C₁·T·M_=(k-1) \ M_(k-1)`.
pub fn brute_force_layers(
    n: usize,
    table: &GroupTable,
    t: &UMat2,
    limit: usize,
) -> Result<Vec<HashSet<UMat2>>> {
    if n > limit {
        return Err(Error::LimitExceeded { requested: n, limit });
    }
    let clifford = table.elements();
    let mut all: HashSet<UMat2> = clifford.iter().cloned().collect();
    let mut layers = vec![all.clone()];
    for _ in 1..=n {
        let mut fresh = HashSet::new();
        for m in layers.last().expect("nonempty") {
            let tm = t * m;
            for c in clifford {
                let x = c * &tm;
                if !all.contains(&x) {
                    fresh.insert(x);
                }
            }
        }
        all.extend(fresh.iter().cloned());
        layers.push(fresh);
    }
    Ok(layers)
}

/// `M_n` by brute force.
pub fn brute_force_mn(n: usize, table: &GroupTable, t: &UMat2, limit: usize) -> Result<HashSet<UMat2>> {
    Ok(brute_force_layers(n, table, t, limit)?.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub normal_form_count: u64,
    pub distinct_matrix_count: u64,
    pub oracle_count: Option<u64>,
    pub closed_form: u64,
    pub pass: bool,
}

/// Evaluates every normal form with at most `n` blocks and checks that the
/// matrices are pairwise distinct, that their number matches the closed
/// form and, if `oracle_limit` is given, that they are exactly `M_n`.
pub fn verify_uniqueness(
    n: usize,
    normalizer: &Normalizer,
    oracle_limit: Option<usize>,
) -> Result<CensusReport> {
    let table = normalizer.table();
    let t = normalizer.t_matrix();
    let mut seen: HashMap<UMat2, NormalForm> = HashMap::new();
    let mut normal_form_count = 0u64;

    for k in 0..=n {
        for blocks in block_sequences(k) {
            let chain = blocks.iter().fold(UMat2::identity(), |acc, b| {
                let s = table.matrix(normalizer.cosets().syndrome(b.syndrome()));
                &(&acc * s) * t
            });
            for tail in table.ids() {
                normal_form_count += 1;
                let m = &chain * table.matrix(tail);
                let nf = NormalForm { blocks: blocks.clone(), cliff: tail };
                if let Some(prev) = seen.insert(m, nf.clone()) {
                    return Err(Error::VerificationFailure(format!(
                        "normal forms {} and {} compute the same matrix",
                        normalizer.render(&prev),
                        normalizer.render(&nf)
                    )));
                }
            }
        }
    }

    let closed_form = u64::try_from(count_closed_form(n as u32, false))
        .map_err(|_| Error::VerificationFailure(format!("closed form overflows at n = {n}")))?;
    let distinct = seen.len() as u64;
    if distinct != closed_form || normal_form_count != closed_form {
        return Err(Error::VerificationFailure(format!(
            "n = {n}: {normal_form_count} normal forms, {distinct} matrices, closed form {closed_form}"
        )));
    }

    let oracle_count = match oracle_limit {
        None => None,
        Some(limit) => {
            let oracle = brute_force_mn(n, table, t, limit)?;
            if let Some(m) = seen.keys().find(|m| !oracle.contains(*m)) {
                return Err(Error::VerificationFailure(format!(
                    "normal form {} is missing from the brute-force set",
                    normalizer.render(&seen[m])
                )));
            }
            if oracle.len() as u64 != distinct {
                return Err(Error::VerificationFailure(format!(
                    "n = {n}: brute force found {} matrices, normal forms give {distinct}",
                    oracle.len()
                )));
            }
            Some(oracle.len() as u64)
        }
    };

    Ok(CensusReport {
        n,
        normal_form_count,
        distinct_matrix_count: distinct,
        oracle_count,
        closed_form,
        pass: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkReport {
    pub group_order: usize,
    pub coset_sizes: [usize; 3],
    pub decomposition_holds: bool,
    pub census: CensusReport,
}

/// The `{R, P, T}` basis with `R = (1/√2)[[1, 1], [−1, 1]]`.
pub fn r_basis() -> Result<Normalizer> {
    Normalizer::from_generators(Generator::new('R', UMat2::r()), Generator::new('P', UMat2::p()), UMat2::t())
}

/// Rebuilds group, cosets and rules with `R` in place of `H` and reruns
/// [`verify_uniqueness`]. A failed coset decomposition is returned as an error.
pub fn verify_remark_r(n: usize, oracle_limit: Option<usize>) -> Result<RemarkReport> {
    let normalizer = r_basis()?;
    let census = verify_uniqueness(n, &normalizer, oracle_limit)?;
    let cosets = normalizer.cosets();
    Ok(RemarkReport {
        group_order: normalizer.table().len(),
        coset_sizes: crate::group::CosetTag::ALL.map(|tag| cosets.coset_size(tag)),
        decomposition_holds: true,
        census,
    })
}
