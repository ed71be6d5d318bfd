//! Self-check suite behind `cliffordt verify`.
//!
//! Each check rebuilds what it needs and compares the normalizer against
//! exact matrix arithmetic or the brute-force census.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::census::{self, brute_force_layers, enumerate_normal_forms, verify_uniqueness};
use crate::group::{conjugates_in_group, quotient_profile, scalar_subgroup, subgroup_ct, CosetTag};
use crate::normalizer::{evaluate, parse, Block, Circuit, Gate, NormalForm, Normalizer};
use crate::ring::{RingElem, StateVec, UMat2};
use crate::rules::{check_fixture, parse_fixture, APPENDIX_FIXTURE};
use crate::stabilizer::{classify, nonidentity_witness, stab_trace, verify_stabilizes, ParityClass};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest T budget for the uniqueness census.
    pub tmax: usize,
    /// Largest T budget for the brute-force oracle.
    pub oracle_max: usize,
    pub random_cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tmax: 5, oracle_max: census::DEFAULT_ORACLE_LIMIT, random_cases: 10_000, seed: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;
type CheckFn<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All words over `{H, P, T}` of length at most `max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> Vec<Circuit> {
    let mut out = vec![Circuit::default()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Gate>| {
                Gate::ALL.iter().map(move |&g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Circuit::new));
    }
    out
}

/// Fewest `T` symbols among all words of length at most `max_len`, per matrix.
pub fn min_t_by_search(max_len: usize) -> HashMap<UMat2, usize> {
    let mut best = HashMap::from([(UMat2::identity(), 0)]);
    let mut layer = best.clone();
    for _ in 0..max_len {
        let mut next: HashMap<UMat2, usize> = HashMap::new();
        for (m, t) in &layer {
            for g in Gate::ALL {
                let cost = t + usize::from(g == Gate::T);
                let e = next.entry(m * &g.matrix()).or_insert(usize::MAX);
                *e = (*e).min(cost);
            }
        }
        for (m, t) in &next {
            let e = best.entry(m.clone()).or_insert(usize::MAX);
            *e = (*e).min(*t);
        }
        layer = next;
    }
    best
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Circuit {
    let len = rng.gen_range(0..=max_len);
    Circuit::new((0..len).map(|_| Gate::ALL[rng.gen_range(0..3)]).collect())
}

pub fn random_normal_form(rng: &mut impl Rng, blocks: usize, group_len: usize) -> NormalForm {
    let blocks = (0..blocks)
        .map(|i| if i == 0 { Block::ALL[rng.gen_range(0..3)] } else { Block::INNER[rng.gen_range(0..2)] })
        .collect();
    NormalForm { blocks, cliff: crate::group::CliffordId(rng.gen_range(0..group_len as u32)) }
}

/// Whether a class transition obeys the parity-class laws; `None` when no
/// law constrains the source class.
pub fn transition_allowed(from: ParityClass, block: Block, to: ParityClass) -> Option<bool> {
    use ParityClass::*;
    let expected = match (from, block) {
        (T1 | T2, Block::HT) => T2,
        (T1 | T2, Block::PHT) => T1,
        (T1 | T2, Block::T) => T3,
        (T4 | T5, Block::HT) => T7,
        (T4 | T5, Block::PHT) => T8,
        (T4 | T5, Block::T) => T9,
        (T7 | T8, Block::HT) => T4,
        (T7 | T8, Block::PHT) => T5,
        (T7 | T8, Block::T) => T6,
        _ => return None,
    };
    Some(expected == to)
}

fn check_group(n: &Normalizer) -> Outcome {
    let g = n.table();
    ensure(g.len() == 192, || format!("group order {}", g.len()))?;
    Ok(format!("order 192, diameter {}", g.diameter()))
}

fn check_cosets(n: &Normalizer) -> Outcome {
    let g = n.table();
    let t = UMat2::t();
    let ct = subgroup_ct(g, &t);
    ensure(ct.len() == 64, || format!("|C_T| = {}", ct.len()))?;
    ensure(conjugates_in_group(g, &t) == ct, || "C_T differs from its conjugate set".into())?;
    for tag in CosetTag::ALL {
        let size = n.cosets().coset_size(tag);
        ensure(size == 64, || format!("coset {tag} has {size} elements"))?;
    }
    let k = scalar_subgroup(g);
    ensure(k.len() == 8, || format!("|K| = {}", k.len()))?;
    let q = quotient_profile(g, &ct, &k);
    let d4 = BTreeMap::from([(1, 1), (2, 5), (4, 2)]);
    ensure(q.order == 8 && !q.abelian && q.order_multiset == d4, || format!("quotient {q:?}"))?;
    Ok("|C_T| = 64, cosets 64/64/64, |K| = 8, quotient order 8 nonabelian {1:1, 2:5, 4:2}".into())
}

fn check_rules(n: &Normalizer) -> Outcome {
    let (g, t) = (n.table(), n.t_matrix());
    for w0 in g.ids() {
        let r = n.rules().get(w0);
        let lhs = g.matrix(w0) * t;
        let rhs = &(g.matrix(n.cosets().syndrome(r.s)) * t) * g.matrix(r.w1);
        ensure(lhs == rhs, || format!("rule for {} fails", g.display_word(w0)))?;
    }
    let rows = parse_fixture(APPENDIX_FIXTURE, g).map_err(|e| e.to_string())?;
    let report = check_fixture(&rows, g, n.cosets(), n.rules());
    ensure(report.ok(), || format!("appendix mismatch: {:?}", report.mismatches[0]))?;
    Ok(format!("192 rules exact, {} appendix rows match", report.rows))
}

fn check_counts(n: &Normalizer, opts: &VerifyOptions) -> Outcome {
    let g = n.table();
    let mut per_layer = [0u64; 13];
    for nf in enumerate_normal_forms(12, g) {
        ensure(nf.is_well_formed(), || format!("malformed {}", n.render(&nf)))?;
        per_layer[nf.t_count()] += 1;
    }
    let mut total = 0u64;
    for (k, &count) in per_layer.iter().enumerate() {
        total += count;
        ensure(census::count_closed_form(k as u32, true) == count.into(), || {
            format!("{count} normal forms with exactly {k} T gates")
        })?;
        ensure(census::count_closed_form(k as u32, false) == total.into(), || {
            format!("{total} normal forms with at most {k} T gates")
        })?;
    }
    let layers =
        brute_force_layers(opts.oracle_max, g, n.t_matrix(), opts.oracle_max).map_err(|e| e.to_string())?;
    let mut cumulative = 0u64;
    for (k, layer) in layers.iter().enumerate() {
        cumulative += layer.len() as u64;
        ensure(census::count_closed_form(k as u32, false) == cumulative.into(), || {
            format!("oracle |M_{k}| = {cumulative}")
        })?;
    }
    for layer in layers.iter().take(4) {
        for m in layer {
            ensure(layer.contains(&m.adjoint()), || format!("M_=n not closed under inverse: {m:?}"))?;
        }
    }
    Ok(format!("enumeration to n = 12 and oracle to n = {} match the closed forms", opts.oracle_max))
}

fn check_uniqueness(n: &Normalizer, opts: &VerifyOptions) -> Outcome {
    let oracle = (opts.tmax <= opts.oracle_max).then_some(opts.oracle_max);
    let r = verify_uniqueness(opts.tmax, n, oracle).map_err(|e| e.to_string())?;
    Ok(format!("{} normal forms with at most {} T gates, all distinct", r.distinct_matrix_count, r.n))
}

fn check_normalizer(n: &Normalizer, opts: &VerifyOptions) -> Outcome {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut corpus = words_up_to(7);
    corpus.extend((0..opts.random_cases).map(|_| random_word(&mut rng, 60)));
    let mut by_matrix: HashMap<UMat2, NormalForm> = HashMap::new();
    let mut by_form: HashMap<NormalForm, UMat2> = HashMap::new();
    for w in &corpus {
        let m = evaluate(w);
        let (nf, lookups) = n.normalize_counted(w);
        ensure(n.nf_matrix(&nf) == m, || format!("{w} normalizes to a different matrix"))?;
        ensure(nf.is_well_formed(), || format!("{w} gives a malformed normal form"))?;
        ensure(nf.t_count() <= w.t_symbols(), || format!("{w} gains T gates"))?;
        ensure(lookups <= 2 * w.len(), || format!("{w} needs {lookups} lookups"))?;
        let again = n.normalize(&parse(&n.render(&nf)).map_err(|e| e.to_string())?);
        ensure(again == nf, || format!("{w} is not idempotent"))?;
        if let Some(prev) = by_matrix.insert(m.clone(), nf.clone()) {
            ensure(prev == nf, || format!("{w}: same matrix, different normal forms"))?;
        }
        if let Some(prev) = by_form.insert(nf, m.clone()) {
            ensure(prev == m, || format!("{w}: same normal form, different matrices"))?;
        }
    }
    Ok(format!("{} words sound, idempotent and complete", corpus.len()))
}

fn check_t_count(n: &Normalizer) -> Outcome {
    let best = min_t_by_search(12);
    for w in words_up_to(7) {
        let expected = best[&evaluate(&w)];
        let got = n.t_count(&w);
        ensure(got == expected, || format!("{w}: T-count {got}, search finds {expected}"))?;
    }
    Ok("every word of length ≤ 7 matches the exhaustive search".into())
}

fn check_inverse(n: &Normalizer) -> Outcome {
    let mut count = 0;
    for nf in enumerate_normal_forms(3, n.table()) {
        let c = n.nf_circuit(&nf);
        let inv = n.invert(&c);
        ensure(inv.t_count() == nf.t_count(), || format!("{} inverts to {}", n.render(&nf), n.render(&inv)))?;
        ensure(&n.nf_matrix(&inv) * &n.nf_matrix(&nf) == UMat2::identity(), || {
            format!("{} has a wrong inverse", n.render(&nf))
        })?;
        count += 1;
    }
    Ok(format!("{count} normal forms keep their T-count under inversion"))
}

fn check_stabilizer(n: &Normalizer, opts: &VerifyOptions) -> Outcome {
    let mut rng = StdRng::seed_from_u64(opts.seed ^ 0x5eed);
    let g = n.table();
    let t = n.t_matrix();
    for _ in 0..opts.random_cases {
        let k = rng.gen_range(2..=30);
        let nf = random_normal_form(&mut rng, k, g.len());
        let trace = stab_trace(&nf, g).map_err(|e| e.to_string())?;
        let mut state = g.matrix(nf.cliff).apply(&StateVec::zero_ket());
        let name = n.render(&nf);
        for (level, block) in std::iter::once(None).chain(nf.blocks.iter().rev().map(Some)).enumerate() {
            if let Some(&b) = block {
                let s = g.matrix(n.cosets().syndrome(b.syndrome()));
                state = (s * t).apply(&state);
                let (from, to) = (classify(&trace[level - 1]), classify(&trace[level]));
                ensure(transition_allowed(from, b, to) != Some(false), || {
                    format!("{name}: {from} --{}--> {to}", b.name())
                })?;
            }
            ensure(verify_stabilizes(&trace[level], &state), || {
                format!("{name}: level {level} triple does not stabilize the state")
            })?;
        }
        let final_class = classify(trace.last().expect("nonempty"));
        ensure(final_class != ParityClass::Other, || format!("{name}: final class OTHER"))?;
        let witness = nonidentity_witness(&nf, n).map_err(|e| e.to_string())?;
        let not_identity = n.nf_matrix(&nf) != UMat2::identity();
        ensure(witness == not_identity, || format!("{name}: witness {witness}"))?;
    }
    for nf in enumerate_normal_forms(5, g).filter(|nf| !nf.blocks.is_empty()) {
        let trace = stab_trace(&nf, g).map_err(|e| e.to_string())?;
        if let [start, _, second, ..] = trace.as_slice() {
            let on_z = start.z.a != 0.into();
            let class = classify(second);
            let expected =
                if on_z { [ParityClass::T1, ParityClass::T2] } else { [ParityClass::T4, ParityClass::T5] };
            if nf.blocks[nf.blocks.len() - 2] != Block::T {
                ensure(expected.contains(&class), || {
                    format!("{}: class {class} after two blocks", n.render(&nf))
                })?;
            }
        }
        let witness = nonidentity_witness(&nf, n).map_err(|e| e.to_string())?;
        ensure(witness && n.nf_matrix(&nf) != UMat2::identity(), || {
            format!("{} is not certified", n.render(&nf))
        })?;
    }
    Ok(format!("{} random normal forms with 2-30 T gates, census to 5 T gates certified", opts.random_cases))
}

fn check_phase() -> Outcome {
    let hp = &UMat2::h() * &UMat2::p();
    let hp3 = &(&hp * &hp) * &hp;
    ensure(hp3 == UMat2::scalar(RingElem::omega_pow(1)), || format!("(HP)^3 = {hp3:?}"))?;
    Ok("(HP)^3 = e^{iπ/4}·I".into())
}

fn check_remark(opts: &VerifyOptions) -> Outcome {
    let n = opts.tmax.min(3);
    let oracle = (n <= opts.oracle_max).then_some(opts.oracle_max);
    let r = census::verify_remark_r(n, oracle).map_err(|e| e.to_string())?;
    Ok(format!("⟨R,P⟩ has order {}, cosets {:?}, uniqueness holds to n = {n}", r.group_order, r.coset_sizes))
}

/// Runs every check, in a fixed order.
pub fn run_all(opts: &VerifyOptions) -> Vec<Check> {
    let n = Normalizer::standard();
    let checks: Vec<(&'static str, CheckFn)> = vec![
        ("group-order", Box::new(|| check_group(&n))),
        ("cosets", Box::new(|| check_cosets(&n))),
        ("rules", Box::new(|| check_rules(&n))),
        ("counts", Box::new(|| check_counts(&n, opts))),
        ("uniqueness", Box::new(|| check_uniqueness(&n, opts))),
        ("normalizer", Box::new(|| check_normalizer(&n, opts))),
        ("t-count", Box::new(|| check_t_count(&n))),
        ("inverse", Box::new(|| check_inverse(&n))),
        ("stabilizer", Box::new(|| check_stabilizer(&n, opts))),
        ("phase", Box::new(check_phase)),
        ("remark-r", Box::new(|| check_remark(opts))),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => Check { name, passed: true, detail },
            Err(detail) => Check { name, passed: false, detail },
        })
        .collect()
}
