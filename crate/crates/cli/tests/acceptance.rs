//! One line per acceptance criterion. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use common::{chars, check_calculus, check_tracker, monomial_contains, tracker_instance};
use po2::random::{det_automaton, formula, lasso, restricted_monomial, AutomatonParams};
use po2::{
    chain_lengths, complement, complete, det_po2_to_monomials, emptiness_bound, equivalent, includes, is_empty,
    is_empty_within, is_unambiguous_bounded, member, monomial_member, monomial_to_det_po2, product, product_detailed,
    run_det, run_monomial, sat_via_emptiness, validate, BoolOp, Builder, Emptiness, Equivalence, Inclusion, LassoWord,
    LetterSet, OmegaMonomial, Po2Automaton, Polarity, SatResult, Unambiguity,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn alphabet(rng: &mut StdRng) -> &'static str {
    ["a", "ab", "abc"][rng.gen_range(0..3)]
}

/// A random word of `m`, with short segments.
fn sample(rng: &mut StdRng, m: &OmegaMonomial) -> LassoWord {
    let pick = |rng: &mut StdRng, s: &LetterSet, n: usize| -> Vec<char> {
        let v: Vec<char> = s.iter().copied().collect();
        if v.is_empty() {
            return Vec::new();
        }
        (0..n).map(|_| *v.choose(rng).unwrap()).collect()
    };
    let mut u = Vec::new();
    for (s, a) in &m.steps {
        let n = rng.gen_range(0..=3);
        u.extend(pick(rng, s, n));
        u.push(*a);
    }
    let n = rng.gen_range(0..=2);
    u.extend(pick(rng, &m.tail, n));
    let n = rng.gen_range(1..=3);
    LassoWord::new(u, pick(rng, &m.tail, n)).unwrap()
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    }
}

fn verdict(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn complementation() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(101);
    let mut failures = Vec::new();
    let (automata, lassos) = (500, 10);
    for _ in 0..automata {
        let n = rng.gen_range(1..=8);
        let p = AutomatonParams::new(n, alphabet(&mut rng));
        let a = det_automaton(&mut rng, &p);
        check(&mut failures, a.is_complete(), || "generator produced an incomplete automaton".into());
        let c = complement(&a).map_err(|e| e.to_string())?;
        for _ in 0..lassos {
            let w = lasso(&mut rng, &p.alphabet, 5, 3);
            let (x, y) = (member(&a, &w).unwrap(), member(&c, &w).unwrap());
            check(&mut failures, x != y, || format!("{w} has the same verdict in both"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(&mut failures, secs < 30.0, || format!("took {secs:.1} s"));
    verdict(failures, format!("{automata} automata x {lassos} lassos in {secs:.2} s"))
}

fn products() -> Outcome {
    let mut rng = StdRng::seed_from_u64(102);
    let mut failures = Vec::new();
    let pairs = 500;
    let mut largest = 0;
    for i in 0..pairs {
        let sigma = alphabet(&mut rng);
        let (n1, n2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a1 = det_automaton(&mut rng, &AutomatonParams::new(n1, sigma));
        let a2 = det_automaton(&mut rng, &AutomatonParams::new(n2, sigma));
        let op = if i % 2 == 0 { BoolOp::Intersection } else { BoolOp::Union };
        let prod = product_detailed(&a1, &a2, op).map_err(|e| e.to_string())?;
        let states = prod.automaton.num_states();
        largest = largest.max(states);
        let bound = prod.state_bound(n1, n2);
        check(&mut failures, states as u128 <= bound, || format!("{states} states over the bound {bound}"));
        for _ in 0..10 {
            let w = lasso(&mut rng, &chars(sigma), 5, 3);
            let (x, y) = (member(&a1, &w).unwrap(), member(&a2, &w).unwrap());
            let want = match op {
                BoolOp::Intersection => x && y,
                BoolOp::Union => x || y,
            };
            check(&mut failures, member(&prod.automaton, &w).unwrap() == want, || format!("{op:?} on {w}"));
        }
    }
    verdict(failures, format!("{pairs} pairs x 10 lassos, largest product {largest} states"))
}

fn calculus() -> Outcome {
    let (checked, failures) = check_calculus("abc", 7);
    let n = failures.len();
    verdict(failures.into_iter().take(5).collect(), format!("{checked} factorized suffixes, {n} counterexamples"))
}

fn tracker() -> Outcome {
    let mut rng = StdRng::seed_from_u64(104);
    let mut failures = Vec::new();
    let (mut done, mut steps) = (0, 0);
    while done < 200 {
        let Some(inst) = tracker_instance(&mut rng) else { continue };
        done += 1;
        match check_tracker(&inst) {
            Ok(n) => steps += n,
            Err(e) => check(&mut failures, false, || e),
        }
    }
    verdict(failures, format!("{done} instances, {steps} tracked steps"))
}

fn round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(105);
    let mut failures = Vec::new();
    let (mut built, mut ambiguous) = (0, 0);
    while built < 100 {
        let sigma = chars(["ab", "abc"][rng.gen_range(0..2)]);
        let m = restricted_monomial(&mut rng, &sigma, 3);
        let k = m.degree();
        if let Unambiguity::Ambiguous { .. } = is_unambiguous_bounded(&m, 2 * (k + 1) * (k + 1)) {
            ambiguous += 1;
            continue;
        }
        let a = monomial_to_det_po2(&m, &sigma).map_err(|e| format!("{m}: {e}"))?;
        built += 1;
        for j in 0..20 {
            let w = if j % 2 == 0 { sample(&mut rng, &m) } else { lasso(&mut rng, &sigma, 5, 3) };
            let got = run_det(&a, &w).unwrap().accepted();
            check(&mut failures, got == monomial_member(&m, &w), || format!("{m} on {w}"));
        }
    }
    let mut automata = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let p = AutomatonParams::new(n, ["ab", "abc"][rng.gen_range(0..2)]);
        let a = det_automaton(&mut rng, &p);
        let poly = det_po2_to_monomials(&a).map_err(|e| e.to_string())?;
        let chain = chain_lengths(&complete(&a).unwrap()).unwrap().all;
        automata += 1;
        for m in &poly {
            check(&mut failures, m.is_restricted(), || format!("{m} is not restricted"));
            check(&mut failures, m.degree() < chain, || format!("{m} exceeds chain length {chain}"));
        }
        for _ in 0..20 {
            let w = lasso(&mut rng, &p.alphabet, 5, 3);
            let got = poly.iter().any(|m| m.member(&w));
            check(&mut failures, got == run_det(&a, &w).unwrap().accepted(), || format!("polynomial on {w}"));
        }
    }
    verdict(
        failures,
        format!("{built} monomials ({ambiguous} ambiguous skipped) and {automata} automata, 20 lassos each"),
    )
}

fn joint_runs() -> Outcome {
    let mut rng = StdRng::seed_from_u64(106);
    let mut failures = Vec::new();
    let (mut done, mut max_degree) = (0, 0);
    while done < 100 {
        let sigma = ["ab", "abc"][rng.gen_range(0..2)];
        let (na, nb) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = complete(&det_automaton(&mut rng, &AutomatonParams::new(na, sigma))).unwrap();
        let b = complete(&det_automaton(&mut rng, &AutomatonParams::new(nb, sigma))).unwrap();
        let w = lasso(&mut rng, &chars(sigma), 5, 3);
        if !(member(&a, &w).unwrap() && member(&b, &w).unwrap()) {
            continue;
        }
        done += 1;
        let p = run_monomial(&[&a, &b], &w).map_err(|e| e.to_string())?;
        let (na, nb) = (a.num_states(), b.num_states());
        max_degree = max_degree.max(p.degree());
        check(&mut failures, p.degree() + 2 <= na + nb, || format!("{p} has degree over {na} + {nb} - 2"));
        check(&mut failures, monomial_contains(&p, &w), || format!("{p} misses {w}"));
        for _ in 0..50 {
            let x = sample(&mut rng, &p);
            let inside = member(&a, &x).unwrap() && member(&b, &x).unwrap();
            check(&mut failures, inside, || format!("{x} in {p} but not in both"));
        }
    }
    verdict(failures, format!("{done} pairs x 50 samples, largest degree {max_degree}"))
}

/// The language of `u·a^ω` for no word at all.
fn empty_automaton(sigma: &[char]) -> Po2Automaton {
    let mut b = Builder::new(sigma.iter().copied());
    let z = b.state("none", Polarity::X);
    b.set_initial(z, true);
    for &c in sigma {
        b.add_sym(z, c, z);
    }
    b.build().unwrap()
}

fn rebuild(poly: &[OmegaMonomial], sigma: &[char]) -> po2::Result<Po2Automaton> {
    let mut acc = empty_automaton(sigma);
    for m in poly {
        acc = product(&acc, &monomial_to_det_po2(m, sigma)?, BoolOp::Union)?;
    }
    Ok(acc)
}

fn decisions() -> Outcome {
    let mut rng = StdRng::seed_from_u64(107);
    let mut failures = Vec::new();
    let mut witnesses = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let mut p = AutomatonParams::new(n, alphabet(&mut rng));
        p.final_ratio = 0.3;
        let a = det_automaton(&mut rng, &p);
        let bound = emptiness_bound(&a).unwrap();
        let once = is_empty_within(&a, bound).unwrap();
        check(&mut failures, once == is_empty_within(&a, 2 * bound).unwrap(), || "doubling changed a verdict".into());
        check(&mut failures, once == is_empty(&a).unwrap(), || "bounded and unbounded verdicts differ".into());
        if let Emptiness::Nonempty(w) = once {
            witnesses += 1;
            check(&mut failures, member(&a, &w.lasso()).unwrap(), || format!("witness {w:?} rejected"));
        }
        let b = det_automaton(&mut rng, &p);
        if let Inclusion::Counterexample(w) = includes(&a, &b).unwrap() {
            witnesses += 1;
            let l = w.lasso();
            let ok = member(&a, &l).unwrap() && !member(&b, &l).unwrap();
            check(&mut failures, ok, || format!("inclusion counterexample {l} does not separate"));
        }
        if let Equivalence::Counterexample { witness, .. } = equivalent(&a, &b).unwrap() {
            witnesses += 1;
            let l = witness.lasso();
            check(&mut failures, member(&a, &l).unwrap() != member(&b, &l).unwrap(), || {
                format!("equivalence counterexample {l} does not separate")
            });
        }
    }
    let mut rebuilt = 0;
    while rebuilt < 50 {
        let sigma = chars(["ab", "abc"][rng.gen_range(0..2)]);
        let m = restricted_monomial(&mut rng, &sigma, 1);
        let Ok(a) = monomial_to_det_po2(&m, &sigma) else { continue };
        let poly = det_po2_to_monomials(&a).map_err(|e| e.to_string())?;
        let back = rebuild(&poly, &sigma).map_err(|e| format!("{m}: {e}"))?;
        rebuilt += 1;
        check(&mut failures, equivalent(&a, &back).unwrap() == Equivalence::Equivalent, || format!("{m} rebuilt differs"));
    }
    verdict(failures, format!("200 automata, {witnesses} witnesses re-verified, {rebuilt} monomials rebuilt"))
}

fn sat() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(108);
    let mut failures = Vec::new();
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..300 {
        let vars = rng.gen_range(1..=6);
        let size = rng.gen_range(0..=8);
        let f = formula(&mut rng, vars, size);
        match sat_via_emptiness(&f).map_err(|e| e.to_string())? {
            SatResult::Sat(x) => {
                sat += 1;
                check(&mut failures, f.eval(&x), || format!("{f}: assignment {x:?} is not a model"));
            }
            SatResult::Unsat => {
                unsat += 1;
                check(&mut failures, f.truth_table_sat().is_none(), || format!("{f} reported unsat"));
            }
        }
        let a = po2::build_sat_automaton(&f);
        let m = f.var_count();
        let bit = |rng: &mut StdRng| if rng.gen_bool(0.5) { '1' } else { '0' };
        for _ in 0..5 {
            let len = m + rng.gen_range(1..=4);
            let mut u: Vec<char> = (0..len).map(|_| bit(&mut rng)).collect();
            let plen = rng.gen_range(1..=2);
            let v: Vec<char> = (0..plen).map(|_| bit(&mut rng)).collect();
            let before = member(&a, &LassoWord::new(u.clone(), v.clone()).unwrap()).unwrap();
            let j = rng.gen_range(m..len);
            u[j] = if u[j] == '0' { '1' } else { '0' };
            let v: Vec<char> = v.iter().map(|&c| if c == '0' { '1' } else { '0' }).collect();
            let after = member(&a, &LassoWord::new(u, v).unwrap()).unwrap();
            check(&mut failures, before == after, || format!("{f}: mutation beyond position {m} changed acceptance"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(&mut failures, secs < 60.0, || format!("took {secs:.1} s"));
    verdict(failures, format!("300 formulas ({sat} sat, {unsat} unsat) in {secs:.2} s"))
}

fn example() -> Outcome {
    let mut failures = Vec::new();
    let m: OmegaMonomial = support::MONOMIAL.parse().unwrap();
    let a = monomial_to_det_po2(&m, &chars("abc")).map_err(|e| e.to_string())?;
    check(&mut failures, validate(&a).is_deterministic, || "not deterministic".into());
    for (u, v, want) in [("bac", "c", true), ("bc", "c", false), ("acac", "c", false)] {
        let got = run_det(&a, &LassoWord::from_strs(u, v)).unwrap().accepted();
        check(&mut failures, got == want, || format!("{u}({v}) gave {got}"));
    }
    let golden = fs::read_to_string(support::golden_path()).map_err(|e| e.to_string())?;
    check(&mut failures, support::session_transcript() == golden, || "transcript differs from golden file".into());
    verdict(failures, format!("{} states, 3 memberships, golden transcript", a.num_states()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("complementation", complementation),
        ("product semantics", products),
        ("compatibility calculus", calculus),
        ("tracker", tracker),
        ("translation round trips", round_trips),
        ("joint run degree bound", joint_runs),
        ("decision procedures", decisions),
        ("sat reduction", sat),
        ("worked example", example),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(s) => println!("PASS {} {name}: {s}", i + 1),
            Err(s) => {
                failed += 1;
                println!("FAIL {} {name}: {s}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
