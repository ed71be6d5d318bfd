//! Finite matrix groups generated by a handful of exact 2×2 unitaries, with
//! the coset structure that drives the rewrite rules.
//!
//! Elements are discovered breadth-first by word length. Within a length the
//! queue is kept in lexicographic order (generators compared in the order
//! given), so the first word reaching an element is its shortest,
//! lexicographically least spelling.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::UMat2;

pub const DEFAULT_LIMIT: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordId(pub u32);

impl CliffordId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: char,
    pub matrix: UMat2,
}

impl Generator {
    pub fn new(name: char, matrix: UMat2) -> Generator {
        Generator { name, matrix }
    }
}

/// The closure of a generator set, with dense multiplication and inverse tables.
#[derive(Clone, Debug)]
pub struct GroupTable {
    generators: Vec<Generator>,
    elements: Vec<UMat2>,
    words: Vec<Vec<u8>>,
    index: HashMap<UMat2, CliffordId>,
    right_gen: Vec<Vec<CliffordId>>,
    mul: Vec<CliffordId>,
    inv: Vec<CliffordId>,
}

impl GroupTable {
    pub fn build(generators: &[Generator], limit: usize) -> Result<GroupTable> {
        let mut elements = vec![UMat2::identity()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index = HashMap::from([(UMat2::identity(), CliffordId(0))]);
        let mut right_gen: Vec<Vec<CliffordId>> = Vec::new();
        let mut queue = VecDeque::from([CliffordId(0)]);

        while let Some(cur) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (gi, g) in generators.iter().enumerate() {
                let m = &elements[cur.index()] * &g.matrix;
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= limit {
                            return Err(Error::ClosureExceedsLimit { limit });
                        }
                        let id = CliffordId(elements.len() as u32);
                        let mut w = words[cur.index()].clone();
                        w.push(gi as u8);
                        words.push(w);
                        elements.push(m.clone());
                        index.insert(m, id);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            right_gen.push(row);
        }

        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for word in &words {
                let prod =
                    word.iter().fold(CliffordId(a as u32), |acc, &g| right_gen[acc.index()][g as usize]);
                mul.push(prod);
            }
        }
        let inv = (0..n)
            .map(|a| {
                let b = (0..n)
                    .find(|&b| mul[a * n + b] == CliffordId(0))
                    .expect("finite group elements have inverses");
                CliffordId(b as u32)
            })
            .collect();

        Ok(GroupTable { generators: generators.to_vec(), elements, words, index, right_gen, mul, inv })
    }

    /// `⟨H, P⟩`, the single-qubit Clifford group with phases.
    pub fn clifford() -> GroupTable {
        GroupTable::build(&[Generator::new('H', UMat2::h()), Generator::new('P', UMat2::p())], DEFAULT_LIMIT)
            .expect("the Clifford group is finite")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> CliffordId {
        CliffordId(0)
    }

    pub fn ids(&self) -> impl Iterator<Item = CliffordId> + '_ {
        (0..self.len() as u32).map(CliffordId)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Element reached from the identity by generator `i`.
    pub fn generator_id(&self, i: usize) -> CliffordId {
        self.right_gen[0][i]
    }

    pub fn matrix(&self, id: CliffordId) -> &UMat2 {
        &self.elements[id.index()]
    }

    pub fn elements(&self) -> &[UMat2] {
        &self.elements
    }

    /// Canonical word, empty for the identity.
    pub fn word(&self, id: CliffordId) -> String {
        self.words[id.index()].iter().map(|&g| self.generators[g as usize].name).collect()
    }

    pub fn word_len(&self, id: CliffordId) -> usize {
        self.words[id.index()].len()
    }

    /// Length of the longest canonical word.
    pub fn diameter(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn lookup(&self, m: &UMat2) -> Option<CliffordId> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: CliffordId, b: CliffordId) -> CliffordId {
        self.mul[a.index() * self.len() + b.index()]
    }

    pub fn inv(&self, a: CliffordId) -> CliffordId {
        self.inv[a.index()]
    }

    /// Element spelled by `word` over the generator names; `I` is skipped.
    pub fn id_of_word(&self, word: &str) -> Option<CliffordId> {
        word.chars().filter(|&c| c != 'I').try_fold(self.identity(), |acc, c| {
            let gi = self.generators.iter().position(|g| g.name == c)?;
            Some(self.right_gen[acc.index()][gi])
        })
    }

    /// The word as `I` when empty, for display.
    pub fn display_word(&self, id: CliffordId) -> String {
        let w = self.word(id);
        if w.is_empty() {
            "I".to_string()
        } else {
            w
        }
    }
}

/// Which of the three left cosets `C_T`, `S·C_T`, `PS·C_T` an element lies in,
/// where `S` is the first generator (`H` for the standard basis) and `P` the
/// second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetTag {
    I,
    H,
    PH,
}

impl CosetTag {
    pub const ALL: [CosetTag; 3] = [CosetTag::I, CosetTag::H, CosetTag::PH];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Spelling of the syndrome with the table's generator names.
    pub fn spell(self, table: &GroupTable) -> String {
        let s = table.generators()[0].name;
        let p = table.generators()[1].name;
        match self {
            CosetTag::I => String::new(),
            CosetTag::H => s.to_string(),
            CosetTag::PH => format!("{p}{s}"),
        }
    }
}

impl fmt::Display for CosetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CosetTag::I => "S_I",
            CosetTag::H => "S_H",
            CosetTag::PH => "S_PH",
        })
    }
}

/// `{g : T·g·T† ∈ group}`.
pub fn subgroup_ct(table: &GroupTable, t: &UMat2) -> BTreeSet<CliffordId> {
    let t_dag = t.adjoint();
    table.ids().filter(|&g| table.lookup(&(&(t * table.matrix(g)) * &t_dag)).is_some()).collect()
}

/// `{T·g·T† : g, T·g·T† ∈ group}`, the set of conjugates rather than the
/// set of elements being conjugated.
pub fn conjugates_in_group(table: &GroupTable, t: &UMat2) -> BTreeSet<CliffordId> {
    let t_dag = t.adjoint();
    table.ids().filter_map(|g| table.lookup(&(&(t * table.matrix(g)) * &t_dag))).collect()
}

/// Elements that are scalar multiples of the identity.
pub fn scalar_subgroup(table: &GroupTable) -> BTreeSet<CliffordId> {
    table.ids().filter(|&g| table.matrix(g).as_scalar().is_some()).collect()
}

/// Partition of the group into `C_T`, `S·C_T` and `PS·C_T`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    t: UMat2,
    in_ct: Vec<bool>,
    tags: Vec<CosetTag>,
    syndromes: [CliffordId; 3],
}

impl CosetDecomposition {
    pub fn new(table: &GroupTable, t: &UMat2) -> Result<CosetDecomposition> {
        if table.generators().len() < 2 {
            return Err(Error::TooFewGenerators(table.generators().len()));
        }
        let ct = subgroup_ct(table, t);
        let in_ct: Vec<bool> = table.ids().map(|g| ct.contains(&g)).collect();
        let s = table.generator_id(0);
        let p = table.generator_id(1);
        let syndromes = [table.identity(), s, table.mul(p, s)];

        let mut tags = Vec::with_capacity(table.len());
        for g in table.ids() {
            let matching: Vec<CosetTag> = CosetTag::ALL
                .into_iter()
                .filter(|tag| {
                    let rest = table.mul(table.inv(syndromes[tag.index()]), g);
                    in_ct[rest.index()]
                })
                .collect();
            match matching.as_slice() {
                [tag] => tags.push(*tag),
                _ => {
                    return Err(Error::DecompositionFailure {
                        word: table.display_word(g),
                        matches: matching.len(),
                    })
                }
            }
        }
        Ok(CosetDecomposition { t: t.clone(), in_ct, tags, syndromes })
    }

    pub fn t(&self) -> &UMat2 {
        &self.t
    }

    pub fn tag(&self, g: CliffordId) -> CosetTag {
        self.tags[g.index()]
    }

    pub fn in_ct(&self, g: CliffordId) -> bool {
        self.in_ct[g.index()]
    }

    pub fn syndrome(&self, tag: CosetTag) -> CliffordId {
        self.syndromes[tag.index()]
    }

    pub fn ct_members(&self) -> BTreeSet<CliffordId> {
        (0..self.in_ct.len() as u32).map(CliffordId).filter(|g| self.in_ct(*g)).collect()
    }

    pub fn coset_size(&self, tag: CosetTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientProfile {
    pub order: usize,
    pub abelian: bool,
    /// element order → number of elements with that order
    pub order_multiset: BTreeMap<usize, usize>,
}

/// Order, commutativity and element-order profile of `subgroup / normal`.
pub fn quotient_profile(
    table: &GroupTable,
    subgroup: &BTreeSet<CliffordId>,
    normal: &BTreeSet<CliffordId>,
) -> QuotientProfile {
    let rep = |g: CliffordId| normal.iter().map(|&k| table.mul(g, k)).min().expect("nonempty");
    let cosets: BTreeSet<CliffordId> = subgroup.iter().map(|&g| rep(g)).collect();
    let one = rep(table.identity());

    let abelian =
        cosets.iter().all(|&a| cosets.iter().all(|&b| rep(table.mul(a, b)) == rep(table.mul(b, a))));

    let mut order_multiset = BTreeMap::new();
    for &a in &cosets {
        let mut x = a;
        let mut order = 1;
        while rep(x) != one {
            x = table.mul(x, a);
            order += 1;
        }
        *order_multiset.entry(order).or_insert(0) += 1;
    }

    QuotientProfile { order: cosets.len(), abelian, order_multiset }
}
