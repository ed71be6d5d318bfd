//! The basic transformation rules `W₀·T = S·T·W₁`, one per group element.
//!
//! Rules are derived from the coset decomposition rather than transcribed:
//! `S` is the syndrome of `W₀`'s coset and `W₁ = T†·S†·W₀·T`.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::group::{CliffordId, CosetDecomposition, CosetTag, GroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub s: CosetTag,
    pub w1: CliffordId,
}

#[derive(Clone, Debug)]
pub struct RuleTable {
    rules: Vec<Rule>,
}

impl RuleTable {
    pub fn build(table: &GroupTable, cosets: &CosetDecomposition) -> Result<RuleTable> {
        let t = cosets.t();
        let t_dag = t.adjoint();
        let rules = table
            .ids()
            .map(|w0| {
                let s = cosets.tag(w0);
                let s_dag = table.matrix(cosets.syndrome(s)).adjoint();
                let w1 = &(&(&(&t_dag * &s_dag) * table.matrix(w0)) * t);
                table
                    .lookup(w1)
                    .map(|w1| Rule { s, w1 })
                    .ok_or_else(|| Error::RuleDerivationFailure { word: table.display_word(w0) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RuleTable { rules })
    }

    pub fn get(&self, w0: CliffordId) -> Rule {
        self.rules[w0.index()]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// `(W₀, rule)` pairs in one section, ordered by `W₀`.
    pub fn section(&self, tag: CosetTag) -> impl Iterator<Item = (CliffordId, Rule)> + '_ {
        self.rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.s == tag)
            .map(|(i, r)| (CliffordId(i as u32), *r))
    }

    /// Three sections (`S = I`, `H`, `PH`), one `W₀T = STW₁` line per rule.
    pub fn emit(&self, table: &GroupTable) -> String {
        let mut out = String::new();
        for tag in CosetTag::ALL {
            let name = match tag {
                CosetTag::I => "I".to_string(),
                other => other.spell(table),
            };
            writeln!(out, "# S = {name}").unwrap();
            for (w0, rule) in self.section(tag) {
                writeln!(
                    out,
                    "{}T = {}T{}",
                    table.display_word(w0),
                    tag.spell(table),
                    table.display_word(rule.w1)
                )
                .unwrap();
            }
        }
        out
    }
}

/// One row of a hand-transcribed rule table, `W₀T = STW₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub line: usize,
    pub text: String,
    pub w0: String,
    pub s: CosetTag,
    pub w1: String,
}

/// Parses rule lines like `HPPHT = THPHPPPH`. Blank lines and `#` comments
/// are skipped; `I` inside a word denotes the identity.
pub fn parse_fixture(text: &str, table: &GroupTable) -> Result<Vec<FixtureRow>> {
    let gen_s = table.generators()[0].name;
    let gen_p = table.generators()[1].name;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |message: &str| Error::Fixture { line, message: message.to_string() };
        let (lhs, rhs) = trimmed.split_once('=').ok_or_else(|| bad("missing '='"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let w0 = lhs.strip_suffix('T').ok_or_else(|| bad("left side must end in T"))?;
        let ph = format!("{gen_p}{gen_s}T");
        let h = format!("{gen_s}T");
        let (s, w1) = if let Some(rest) = rhs.strip_prefix(ph.as_str()) {
            (CosetTag::PH, rest)
        } else if let Some(rest) = rhs.strip_prefix(h.as_str()) {
            (CosetTag::H, rest)
        } else if let Some(rest) = rhs.strip_prefix('T') {
            (CosetTag::I, rest)
        } else {
            return Err(bad("right side must start with T, HT or PHT"));
        };
        rows.push(FixtureRow { line, text: trimmed.to_string(), w0: w0.to_string(), s, w1: w1.to_string() });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub line: usize,
    pub text: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct FixtureReport {
    pub rows: usize,
    /// Distinct group elements appearing as `W₀`.
    pub distinct_w0: usize,
    pub mismatches: Vec<Mismatch>,
}

impl FixtureReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares transcribed rows with the generated rules at matrix level: each
/// row must be a true identity, and our rule for the same `W₀` must have
/// the same syndrome and the same `W₁` matrix. Word spellings may differ.
pub fn check_fixture(
    rows: &[FixtureRow],
    table: &GroupTable,
    cosets: &CosetDecomposition,
    rules: &RuleTable,
) -> FixtureReport {
    let t = cosets.t();
    let mut report = FixtureReport { rows: rows.len(), ..Default::default() };
    let mut seen = BTreeSet::new();
    for row in rows {
        let mut fail = |reason: String| {
            report.mismatches.push(Mismatch { line: row.line, text: row.text.clone(), reason })
        };
        let (Some(w0), Some(w1)) = (table.id_of_word(&row.w0), table.id_of_word(&row.w1)) else {
            fail("word outside the generator alphabet".into());
            continue;
        };
        seen.insert(w0);
        let lhs = table.matrix(w0) * t;
        let rhs = &(table.matrix(cosets.syndrome(row.s)) * t) * table.matrix(w1);
        if lhs != rhs {
            fail("row is not a matrix identity".into());
            continue;
        }
        let ours = rules.get(w0);
        if ours.s != row.s {
            fail(format!("syndrome {} but generated rule has {}", row.s, ours.s));
        } else if table.matrix(ours.w1) != table.matrix(w1) {
            fail(format!("W1 differs from generated {}", table.display_word(ours.w1)));
        }
    }
    report.distinct_w0 = seen.len();
    report
}

/// Hand-transcribed rule tables shipped with the crate.
pub const APPENDIX_FIXTURE: &str = include_str!("../fixtures/appendix_rules.txt");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::UMat2;

    fn setup() -> (GroupTable, CosetDecomposition, RuleTable) {
        let table = GroupTable::clifford();
        let cosets = CosetDecomposition::new(&table, &UMat2::t()).unwrap();
        let rules = RuleTable::build(&table, &cosets).unwrap();
        (table, cosets, rules)
    }

    #[test]
    fn examples_from_tables() {
        let (g, _, rules) = setup();
        let id = |w: &str| g.id_of_word(w).unwrap();
        let r = rules.get(id("HPPH"));
        assert_eq!(r.s, CosetTag::I);
        assert_eq!(g.matrix(r.w1), g.matrix(id("HPHPPPH")));
        let r = rules.get(id("PPH"));
        assert_eq!(r.s, CosetTag::H);
        assert_eq!(g.matrix(r.w1), g.matrix(id("HPHPPPH")));
        let r = rules.get(g.identity());
        assert_eq!(r, Rule { s: CosetTag::I, w1: g.identity() });
        let r = rules.get(id("PPPH"));
        assert_eq!(r.s, CosetTag::PH);
        assert_eq!(r.w1, id("HPHPPPH"));
    }

    #[test]
    fn sections_have_64_rules() {
        let (g, _, rules) = setup();
        assert_eq!(rules.len(), 192);
        for tag in CosetTag::ALL {
            assert_eq!(rules.section(tag).count(), 64);
        }
        let text = rules.emit(&g);
        assert_eq!(text.lines().count(), 195);
        assert!(text.contains("\nIT = TI\n"));
    }

    #[test]
    fn prefixed_rules_share_w1() {
        let (g, cosets, rules) = setup();
        let h = cosets.syndrome(CosetTag::H);
        let ph = cosets.syndrome(CosetTag::PH);
        for (w0, rule) in rules.section(CosetTag::I) {
            let rh = rules.get(g.mul(h, w0));
            assert_eq!(rh, Rule { s: CosetTag::H, w1: rule.w1 });
            let rph = rules.get(g.mul(ph, w0));
            assert_eq!(rph, Rule { s: CosetTag::PH, w1: rule.w1 });
        }
    }

    #[test]
    fn parse_rejects_malformed_rows() {
        let g = GroupTable::clifford();
        assert!(matches!(parse_fixture("HPH = TH", &g), Err(Error::Fixture { line: 1, .. })));
        assert!(matches!(parse_fixture("\nHT PH", &g), Err(Error::Fixture { line: 2, .. })));
        assert!(matches!(parse_fixture("HT = PPT", &g), Err(Error::Fixture { .. })));
        let rows = parse_fixture("# c\nIT = TI\nPPHT = HTHPHPPPH\n", &g).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[1].s, rows[1].w1.as_str()), (CosetTag::H, "HPHPPPH"));
    }

    #[test]
    fn detects_a_corrupted_row() {
        let (g, cosets, rules) = setup();
        let rows = parse_fixture("HPPHT = THPHPPP\nPT = HTP\n", &g).unwrap();
        let report = check_fixture(&rows, &g, &cosets, &rules);
        assert_eq!(report.mismatches.len(), 2);
    }

    #[test]
    fn bundled_appendix_matches() {
        let (g, cosets, rules) = setup();
        let rows = parse_fixture(APPENDIX_FIXTURE, &g).unwrap();
        let report = check_fixture(&rows, &g, &cosets, &rules);
        assert_eq!(report.rows, 192);
        assert_eq!(report.distinct_w0, 192, "every element appears once");
        assert!(report.ok(), "{:#?}", report.mismatches);
    }
}
