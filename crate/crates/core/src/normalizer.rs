//! Circuits over `{H, P, T}` and their unique normal forms.
//!
//! A circuit string is read in matrix order: the leftmost gate is the
//! leftmost factor of the product, i.e. the gate applied last.
//!
//! A normal form is `B₁ B₂ … Bₙ W₀`, where each block `Bᵢ` is one of `T`,
//! `HT`, `PHT` (only `B₁` may be a bare `T`) and `W₀` is a Clifford element.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{CliffordId, CosetDecomposition, CosetTag, Generator, GroupTable, DEFAULT_LIMIT};
use crate::ring::UMat2;
use crate::rules::RuleTable;

/// A gate symbol. Under an alternative basis `H` stands for the first
/// Clifford generator (for example `R`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H,
    P,
    T,
}

impl Gate {
    pub const ALL: [Gate; 3] = [Gate::H, Gate::P, Gate::T];

    pub fn matrix(self) -> UMat2 {
        match self {
            Gate::H => UMat2::h(),
            Gate::P => UMat2::p(),
            Gate::T => UMat2::t(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gate::H => 'H',
            Gate::P => 'P',
            Gate::T => 'T',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Circuit {
        Circuit { gates }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of `T` symbols in the word, not the minimal T-count.
    pub fn t_symbols(&self) -> usize {
        self.gates.iter().filter(|&&g| g == Gate::T).count()
    }
}

/// Parses uppercase `H`, `P`, `T`. Whitespace, `.`, `|` and the identity
/// symbol `I` are skipped so rendered normal forms parse back.
pub fn parse(text: &str) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(text.len());
    for (position, character) in text.chars().enumerate() {
        match character {
            'H' => gates.push(Gate::H),
            'P' => gates.push(Gate::P),
            'T' => gates.push(Gate::T),
            'I' | '.' | '|' => {}
            c if c.is_whitespace() => {}
            _ => return Err(Error::Parse { position, character }),
        }
    }
    Ok(Circuit { gates })
}

impl FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Circuit> {
        parse(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gates.iter().try_for_each(|g| write!(f, "{}", g.symbol()))
    }
}

/// Exact unitary of a circuit over the standard gates; `I` when empty.
pub fn evaluate(c: &Circuit) -> UMat2 {
    let (h, p, t) = (UMat2::h(), UMat2::p(), UMat2::t());
    c.gates.iter().fold(UMat2::identity(), |acc, g| {
        &acc * match g {
            Gate::H => &h,
            Gate::P => &p,
            Gate::T => &t,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    T,
    HT,
    PHT,
}

impl Block {
    pub const ALL: [Block; 3] = [Block::T, Block::HT, Block::PHT];
    /// Blocks allowed after the first one.
    pub const INNER: [Block; 2] = [Block::HT, Block::PHT];

    pub fn syndrome(self) -> CosetTag {
        match self {
            Block::T => CosetTag::I,
            Block::HT => CosetTag::H,
            Block::PHT => CosetTag::PH,
        }
    }

    pub fn from_syndrome(tag: CosetTag) -> Block {
        match tag {
            CosetTag::I => Block::T,
            CosetTag::H => Block::HT,
            CosetTag::PH => Block::PHT,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Block::T => "T",
            Block::HT => "HT",
            Block::PHT => "PHT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    /// Left to right; the last block sits next to `cliff`.
    pub blocks: Vec<Block>,
    pub cliff: CliffordId,
}

impl NormalForm {
    pub fn clifford(cliff: CliffordId) -> NormalForm {
        NormalForm { blocks: Vec::new(), cliff }
    }

    pub fn t_count(&self) -> usize {
        self.blocks.len()
    }

    /// Only the first block may be a bare `T`.
    pub fn is_well_formed(&self) -> bool {
        self.blocks.iter().skip(1).all(|&b| b != Block::T)
    }
}

/// Group table, coset decomposition and rule table for one basis, bundled
/// so that normal forms can be computed by table lookups alone.
#[derive(Clone, Debug)]
pub struct Normalizer {
    table: GroupTable,
    cosets: CosetDecomposition,
    rules: RuleTable,
    /// `syndrome(tag)·P` for the pop-merge step.
    syndrome_p: [CliffordId; 3],
    gate_ids: [CliffordId; 2],
}

impl Normalizer {
    /// The standard basis `{H, P, T}`.
    pub fn standard() -> Normalizer {
        Normalizer::from_generators(
            Generator::new('H', UMat2::h()),
            Generator::new('P', UMat2::p()),
            UMat2::t(),
        )
        .expect("the standard basis decomposes")
    }

    /// A basis `{S, P, T}` whose Clifford part is generated by `swap` and
    /// `phase`; syndromes are `I`, `S` and `P·S`.
    pub fn from_generators(swap: Generator, phase: Generator, t: UMat2) -> Result<Normalizer> {
        let table = GroupTable::build(&[swap, phase], DEFAULT_LIMIT)?;
        let cosets = CosetDecomposition::new(&table, &t)?;
        let rules = RuleTable::build(&table, &cosets)?;
        let p = table.generator_id(1);
        let syndrome_p = CosetTag::ALL.map(|tag| table.mul(cosets.syndrome(tag), p));
        let gate_ids = [table.generator_id(0), p];
        Ok(Normalizer { table, cosets, rules, syndrome_p, gate_ids })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn cosets(&self) -> &CosetDecomposition {
        &self.cosets
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    pub fn t_matrix(&self) -> &UMat2 {
        self.cosets.t()
    }

    pub fn normalize(&self, c: &Circuit) -> NormalForm {
        self.normalize_counted(c).0
    }

    /// Normal form together with the number of table lookups performed.
    pub fn normalize_counted(&self, c: &Circuit) -> (NormalForm, usize) {
        let mut blocks: Vec<Block> = Vec::new();
        let mut pending = self.table.identity();
        let mut lookups = 0;
        for &g in c.gates() {
            lookups += 1;
            match g {
                Gate::H => pending = self.table.mul(pending, self.gate_ids[0]),
                Gate::P => pending = self.table.mul(pending, self.gate_ids[1]),
                Gate::T => {
                    let rule = self.rules.get(pending);
                    if rule.s != CosetTag::I {
                        blocks.push(Block::from_syndrome(rule.s));
                        pending = rule.w1;
                    } else if let Some(last) = blocks.pop() {
                        // X·T·T·W₁ = X·P·W₁
                        lookups += 1;
                        pending = self.table.mul(self.syndrome_p[last.syndrome().index()], rule.w1);
                    } else {
                        blocks.push(Block::T);
                        pending = rule.w1;
                    }
                }
            }
        }
        (NormalForm { blocks, cliff: pending }, lookups)
    }

    /// `PHT.HT.T|HP` style: blocks joined by `.`, then `|`, then the
    /// Clifford word (`I` when empty).
    pub fn render(&self, nf: &NormalForm) -> String {
        let blocks: Vec<String> = nf.blocks.iter().map(|&b| self.block_name(b)).collect();
        format!("{}|{}", blocks.join("."), self.table.display_word(nf.cliff))
    }

    pub fn block_name(&self, b: Block) -> String {
        format!("{}T", b.syndrome().spell(&self.table))
    }

    /// Matrix of a circuit whose `H`/`P` symbols stand for this basis' generators.
    pub fn circuit_matrix(&self, c: &Circuit) -> UMat2 {
        let t = self.t_matrix();
        c.gates().iter().fold(UMat2::identity(), |acc, g| {
            &acc * match g {
                Gate::H => self.table.matrix(self.gate_ids[0]),
                Gate::P => self.table.matrix(self.gate_ids[1]),
                Gate::T => t,
            }
        })
    }

    pub fn nf_matrix(&self, nf: &NormalForm) -> UMat2 {
        let t = self.t_matrix();
        let chain = nf.blocks.iter().fold(UMat2::identity(), |acc, b| {
            let s = self.table.matrix(self.cosets.syndrome(b.syndrome()));
            &(&acc * s) * t
        });
        &chain * self.table.matrix(nf.cliff)
    }

    /// The normal form spelled out as a gate sequence.
    pub fn nf_circuit(&self, nf: &NormalForm) -> Circuit {
        let mut gates = Vec::new();
        for b in &nf.blocks {
            match b {
                Block::T => {}
                Block::HT => gates.push(Gate::H),
                Block::PHT => gates.extend([Gate::P, Gate::H]),
            }
            gates.push(Gate::T);
        }
        gates.extend(self.word_gates(nf.cliff));
        Circuit::new(gates)
    }

    fn word_gates(&self, id: CliffordId) -> Vec<Gate> {
        let s = self.table.generators()[0].name;
        self.table.word(id).chars().map(|c| if c == s { Gate::H } else { Gate::P }).collect()
    }

    pub fn equivalent(&self, c1: &Circuit, c2: &Circuit) -> bool {
        self.normalize(c1) == self.normalize(c2)
    }

    /// Minimal number of `T` gates over all circuits with the same unitary.
    pub fn t_count(&self, c: &Circuit) -> usize {
        self.normalize(c).t_count()
    }

    /// Reversed word with every gate replaced by its inverse; `T⁻¹ = T·P³`.
    pub fn inverse_circuit(&self, c: &Circuit) -> Circuit {
        let h_inv = self.word_gates(self.table.inv(self.gate_ids[0]));
        let p_inv = self.word_gates(self.table.inv(self.gate_ids[1]));
        let mut gates = Vec::with_capacity(c.len() * 4);
        for g in c.gates().iter().rev() {
            match g {
                Gate::H => gates.extend(&h_inv),
                Gate::P => gates.extend(&p_inv),
                Gate::T => gates.extend([Gate::T, Gate::P, Gate::P, Gate::P]),
            }
        }
        Circuit::new(gates)
    }

    pub fn invert(&self, c: &Circuit) -> NormalForm {
        self.normalize(&self.inverse_circuit(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Circuit {
        parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(c("HPP").gates(), &[Gate::H, Gate::P, Gate::P]);
        assert_eq!(c("H P\tT").gates(), &[Gate::H, Gate::P, Gate::T]);
        assert_eq!(parse("HXT"), Err(Error::Parse { position: 1, character: 'X' }));
        assert_eq!(parse("hPT"), Err(Error::Parse { position: 0, character: 'h' }));
        assert!(c("").is_empty());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&c("TT")), UMat2::p());
        assert_eq!(evaluate(&c("")), UMat2::identity());
        assert_eq!(evaluate(&c("HHP")), evaluate(&c("PHH")));
    }

    #[test]
    fn normalize_examples() {
        let n = Normalizer::standard();
        let g = n.table();
        let id = |w: &str| g.id_of_word(w).unwrap();

        let nf = n.normalize(&c("HPPHT"));
        assert_eq!(nf.blocks, vec![Block::T]);
        assert_eq!(nf.cliff, id("HPHPPPH"));

        let nf = n.normalize(&c("PPHT"));
        assert_eq!(nf.blocks, vec![Block::HT]);
        assert_eq!(nf.cliff, id("HPHPPPH"));

        assert_eq!(n.normalize(&c("TT")), NormalForm::clifford(id("P")));
        assert_eq!(n.normalize(&c("HPH")), NormalForm::clifford(id("HPH")));
        assert_eq!(n.normalize(&c("")), NormalForm::clifford(g.identity()));
    }

    #[test]
    fn render_examples() {
        let n = Normalizer::standard();
        let g = n.table();
        let nf = NormalForm { blocks: vec![Block::T], cliff: g.identity() };
        assert_eq!(n.render(&nf), "T|I");
        let nf = NormalForm::clifford(g.id_of_word("P").unwrap());
        assert_eq!(n.render(&nf), "|P");
        let nf = NormalForm { blocks: vec![Block::PHT, Block::HT], cliff: g.id_of_word("H").unwrap() };
        assert_eq!(n.render(&nf), "PHT.HT|H");
    }

    #[test]
    fn equivalence_examples() {
        let n = Normalizer::standard();
        assert!(n.equivalent(&c("HHP"), &c("PHH")));
        assert!(n.equivalent(&c("HPPHT"), &c("THPHPPPH")));
        assert!(!n.equivalent(&c("T"), &c("P")));
    }

    #[test]
    fn t_count_examples() {
        let n = Normalizer::standard();
        assert_eq!(n.t_count(&c("TT")), 0);
        assert_eq!(n.t_count(&c("T")), 1);
    }

    #[test]
    fn invert_examples() {
        let n = Normalizer::standard();
        let g = n.table();
        assert_eq!(n.invert(&c("H")), NormalForm::clifford(g.id_of_word("H").unwrap()));

        let inv_t = n.invert(&c("T"));
        assert_eq!(inv_t.t_count(), 1);
        assert_eq!(n.nf_matrix(&inv_t), evaluate(&c("TPPP")));

        let inv = n.invert(&c("HT"));
        assert_eq!(inv.t_count(), 1);
        assert_eq!(&n.nf_matrix(&inv) * &evaluate(&c("HT")), UMat2::identity());
    }

    #[test]
    fn nf_circuit_and_render_agree() {
        let n = Normalizer::standard();
        let nf = n.normalize(&c("THTPHTHTPPH"));
        assert_eq!(parse(&n.render(&nf)).unwrap(), n.nf_circuit(&nf));
        assert_eq!(evaluate(&n.nf_circuit(&nf)), n.nf_matrix(&nf));
    }
}
