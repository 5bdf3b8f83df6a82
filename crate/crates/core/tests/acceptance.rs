//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Criteria with stated runtime bounds assert them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqmon::decomp::{depth, dividers, max_level, Depth};
use eqmon::families;
use eqmon::identity::{derive, DeriveBudget, DeriveOutcome, Identity};
use eqmon::monoid::builtin;
use eqmon::paperlab::{
    self, check_between_divider, check_canonical_form, check_first_then_second, check_h2_order,
    check_second_jump, corpus, random_word, suite_chains, suite_monoid, suite_word_problems,
    ChainsConfig, Status, WordProblemsConfig,
};
use eqmon::variety::{invariant_preserved, InvariantFn, NfbBudget, RunMode};
use eqmon::words::{Letter, Word};

// ---------------------------------------------------------------------------
// Independent oracle: decomposition recomputed from the inductive
// definition over absolute positions, recursing block by block.

/// A block is the half-open position range between two dividers.
type OBlock = (usize, usize);

/// Level parts: divider position (None for the boundary) plus its block.
type OLevel = Vec<(Option<usize>, OBlock)>;

fn occurrences(w: &[Letter], range: (usize, usize), letter: &Letter) -> usize {
    w[range.0..range.1].iter().filter(|l| *l == letter).count()
}

fn oracle_level0(w: &[Letter]) -> OLevel {
    let mut parts = Vec::new();
    let mut divider = None;
    let mut start = 0;
    for (pos, letter) in w.iter().enumerate() {
        if occurrences(w, (0, w.len()), letter) == 1 {
            parts.push((divider, (start, pos)));
            divider = Some(pos);
            start = pos + 1;
        }
    }
    parts.push((divider, (start, w.len())));
    parts
}

fn oracle_refine(w: &[Letter], prev: &OLevel) -> OLevel {
    let mut parts = Vec::new();
    for (divider, block) in prev {
        let mut d = *divider;
        let mut start = block.0;
        for pos in block.0..block.1 {
            let letter = &w[pos];
            let simple_here = occurrences(w, *block, letter) == 1;
            let new_here = occurrences(w, (0, block.0), letter) == 0;
            if simple_here && new_here {
                parts.push((d, (start, pos)));
                d = Some(pos);
                start = pos + 1;
            }
        }
        parts.push((d, (start, block.1)));
    }
    parts
}

fn oracle_levels(w: &[Letter]) -> Vec<OLevel> {
    let mut levels = vec![oracle_level0(w)];
    loop {
        let next = oracle_refine(w, levels.last().unwrap());
        if &next == levels.last().unwrap() {
            return levels;
        }
        levels.push(next);
    }
}

fn oracle_divider_letters(w: &[Letter], levels: &[OLevel], k: usize) -> Vec<Letter> {
    let level = &levels[k.min(levels.len() - 1)];
    level
        .iter()
        .filter_map(|(d, _)| d.map(|pos| w[pos].clone()))
        .collect()
}

#[derive(PartialEq, Debug, Clone, Copy)]
enum OPlace {
    Divider(usize),
    Block(usize),
}

fn oracle_place(level: &OLevel, pos: usize) -> OPlace {
    for (j, (d, block)) in level.iter().enumerate() {
        if *d == Some(pos) {
            return OPlace::Divider(j);
        }
        if pos >= block.0 && pos < block.1 {
            return OPlace::Block(j);
        }
    }
    unreachable!("position outside oracle level");
}

fn oracle_depth(w: &[Letter], levels: &[OLevel], x: &Letter) -> Depth {
    let positions: Vec<usize> = (0..w.len()).filter(|&p| &w[p] == x).collect();
    if positions.len() == 1 {
        return Depth::Finite(0);
    }
    for (j, level) in levels.iter().enumerate() {
        if oracle_place(level, positions[0]) != oracle_place(level, positions[1]) {
            return Depth::Finite(j + 1);
        }
    }
    Depth::Infinite
}

fn report(criterion: &str, elapsed: Duration, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "acceptance {criterion}: {status} ({} ms)",
        elapsed.as_millis()
    );
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "{criterion}: {}", failures[0]);
}

#[test]
fn criterion_1_divider_depth_equivalence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for w in corpus(6, 3) {
        let letters = w.letters();
        let levels = oracle_levels(letters);
        let top = max_level(&w);
        if top + 1 != levels.len().max(1) && !(letters.is_empty() && top == 0) {
            // Stationary level must agree (the oracle omits the repeated
            // fixpoint level, so the ladder length is max_level + 1).
            failures.push(format!("{w}: max_level {top} vs oracle {}", levels.len() - 1));
            continue;
        }
        for k in 0..=top + 1 {
            let lib: Vec<Letter> = dividers(&w, k)
                .iter()
                .filter_map(|d| d.letter().cloned())
                .collect();
            let oracle = oracle_divider_letters(letters, &levels, k);
            if lib != oracle {
                failures.push(format!("{w} level {k}: {lib:?} vs oracle {oracle:?}"));
                continue;
            }
            for t in w.content() {
                let d_lib = depth(&w, &t).unwrap();
                let d_oracle = oracle_depth(letters, &levels, &t);
                if d_lib != d_oracle {
                    failures.push(format!("{w}: depth({t}) {d_lib} vs oracle {d_oracle}"));
                    continue;
                }
                let member = lib.contains(&t);
                let le = matches!(d_oracle, Depth::Finite(j) if j <= k);
                if member != le {
                    failures.push(format!(
                        "{w} level {k}: divider({t})={member} but oracle depth {d_oracle}"
                    ));
                }
            }
        }
    }
    let elapsed = started.elapsed();
    report("1 divider/depth equivalence", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(60), "exceeded 60 s");
}

#[test]
fn criterion_2_occurrence_order_lemmas() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for w in corpus(6, 3) {
        for check in [
            check_h2_order,
            check_between_divider,
            check_first_then_second,
            check_second_jump,
        ] {
            if let Err(e) = check(&w) {
                failures.push(e);
            }
        }
    }
    let elapsed = started.elapsed();
    report("2 occurrence-order lemmas", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(60), "exceeded 60 s");
}

#[test]
fn criterion_3_canonical_form() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut attempted = 0usize;
    for w in corpus(6, 3) {
        for x in w.content() {
            if matches!(depth(&w, &x).unwrap(), Depth::Finite(k) if k >= 1) {
                attempted += 1;
            }
        }
        if let Err(e) = check_canonical_form(&w) {
            failures.push(e);
        }
    }
    assert!(attempted > 500, "corpus yields enough finite-depth pairs");
    report("3 canonical form", started.elapsed(), &failures);
}

#[test]
fn criterion_4_derivation_chains() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let report_data = suite_chains(&ChainsConfig {
        k_max: 3,
        island_words: 50,
        seed: 42,
        cert_dir: Some(dir.path()),
    });
    let failures: Vec<String> = report_data
        .cases
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{}: {:?} {}", c.id, c.status, c.witness.clone().unwrap_or_default()))
        .collect();
    let elapsed = started.elapsed();
    // Lemma 3.3 at k = 1..3, the substitution consequences at k,m <= 2,
    // 50 island words, and the inclusion chains at k <= 2 all verify.
    assert!(report_data.cases.iter().any(|c| c.id == "lemma33:k3"));
    assert_eq!(
        report_data
            .cases
            .iter()
            .filter(|c| c.id.starts_with("lemma35:"))
            .count(),
        50
    );
    assert!(report_data.cases.iter().any(|c| c.id == "lemma66:k2m2"));
    report("4 derivation chains", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(300), "exceeded 5 min");
}

#[test]
fn criterion_5_model_checks() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let p21 = builtin("p21").unwrap();
    let i11 = families::i11();
    assert_eq!(i11.content().len(), 3, "125 assignments over 5 elements");
    if !p21.satisfies(&i11) {
        failures.push("p21 violates the ambient axiom".into());
    }
    let basis2 = families::xsytxy();
    assert_eq!(basis2.content().len(), 5, "3125 assignments over 5 elements");
    if !p21.satisfies(&basis2) {
        failures.push("p21 violates its second basis identity".into());
    }

    let b21 = builtin("b21").unwrap();
    let asg: BTreeMap<Letter, usize> = [
        (Letter::new("a").unwrap(), b21.element_index("a").unwrap()),
        (Letter::new("b").unwrap(), b21.element_index("b").unwrap()),
    ]
    .into_iter()
    .collect();
    let zero = b21.element_index("0").unwrap();
    let eval = |s: &str| b21.eval(&Word::parse(s).unwrap(), &asg).unwrap();
    if eval("a b a") != eval("a") {
        failures.push("b21: aba != a".into());
    }
    if eval("b a b") != eval("b") {
        failures.push("b21: bab != b".into());
    }
    if eval("a a") != zero || eval("b b") != zero {
        failures.push("b21: squares are not zero".into());
    }

    let lz = builtin("lz2_1").unwrap();
    if !lz.satisfies(&families::lrb_ax()) {
        failures.push("lz2_1 violates x y = x y x".into());
    }

    let elapsed = started.elapsed();
    report("5 model checks", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(1), "exceeded 1 s");
}

#[test]
fn criterion_6_ladder_consistency() {
    let started = Instant::now();
    let suite = suite_monoid(3);
    let failures: Vec<String> = suite
        .cases
        .iter()
        .filter(|c| c.id.starts_with("ladder:") && c.status != Status::Pass)
        .map(|c| format!("{}: {}", c.id, c.witness.clone().unwrap_or_default()))
        .collect();
    let ladder_cases = suite
        .cases
        .iter()
        .filter(|c| c.id.starts_with("ladder:"))
        .count();
    assert!(ladder_cases >= 40, "k <= 3, m <= k ladder instances present");
    let elapsed = started.elapsed();
    report("6 ladder consistency", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(30), "exceeded 30 s");
}

#[test]
fn criterion_7_deduction_soundness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    let axiom_pool: Vec<Vec<Identity>> = vec![
        vec![families::i11()],
        vec![families::i11(), families::kappa(1).unwrap()],
        vec![families::i11(), families::xyxy()],
        vec![families::i11(), families::xytxy()],
        vec![families::xsytxy(), families::i11()],
        vec![families::lrb_ax()],
        vec![families::i11(), families::epsilon(0).unwrap()],
        vec![families::i11(), families::zeta(0).unwrap()],
    ];
    let monoids = [
        builtin("p21").unwrap(),
        builtin("b21").unwrap(),
        builtin("lz2_1").unwrap(),
    ];
    // Which monoid satisfies which axiom set, checked exhaustively once.
    let admits: Vec<Vec<bool>> = axiom_pool
        .iter()
        .map(|axioms| {
            monoids
                .iter()
                .map(|m| axioms.iter().all(|a| m.satisfies(a)))
                .collect()
        })
        .collect();

    let mut successes = 0usize;
    let mut failures = Vec::new();
    while successes < 500 {
        let which = rng.gen_range(0..axiom_pool.len());
        let axioms = &axiom_pool[which];
        let u = random_word(&mut rng, 6, 3);
        // Random forward walk to a derivable target.
        let mut v = u.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let succs = eqmon::identity::successors(&v, axioms, u.len() + 5);
            if succs.is_empty() {
                break;
            }
            let idx = rng.gen_range(0..succs.len());
            v = succs.get_index(idx).unwrap().0.clone();
        }
        let outcome = derive(
            axioms,
            &u,
            &v,
            DeriveBudget {
                max_steps: 8,
                max_len: Some(u.len().max(v.len()) + 4),
                max_nodes: 30_000,
            },
        );
        let DeriveOutcome::Found(derivation) = outcome else {
            continue;
        };
        if !derivation.verify(axioms) {
            failures.push(format!("unsound derivation for {u} = {v}"));
            continue;
        }
        successes += 1;
        let conclusion = Identity::new(u.clone(), v.clone());
        for (m, ok) in monoids.iter().zip(&admits[which]) {
            if *ok && !m.satisfies(&conclusion) {
                failures.push(format!(
                    "{}: models the axioms but violates derived {conclusion}",
                    m.name
                ));
            }
        }
    }
    report("7 deduction soundness", started.elapsed(), &failures);
}

#[test]
fn criterion_8_nfb_invariant_evidence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let runs = paperlab::nfb_runs(1);
    // The four named runs; the w1/z1 cores are extra suite coverage.
    let named = [
        "nfb:kappa1:xytxy",
        "nfb:eta1:xx1yxyx0x1",
        "nfb:omega1:xsytxy",
        "nfb:omega2:xtyxy",
    ];
    for (id, axioms, pattern) in runs {
        if !named.contains(&id.as_str()) {
            continue;
        }
        let invariant = InvariantFn::Ini2Retain(pattern.content());
        let report_data = invariant_preserved(
            &axioms,
            &invariant,
            &[pattern.clone()],
            NfbBudget {
                samples: 10_000,
                max_word_len: pattern.len() + 8,
                ..NfbBudget::default()
            },
            42,
        );
        if !report_data.passed() {
            failures.push(format!(
                "{id}: inconsistency with the source claim: {}",
                report_data.violations[0]
            ));
        }
        let enough = report_data.steps_checked >= 10_000
            || report_data.mode == RunMode::Exhaustive;
        if !enough {
            failures.push(format!(
                "{id}: only {} steps checked",
                report_data.steps_checked
            ));
        }
    }
    let elapsed = started.elapsed();
    report("8 nfb invariant evidence", elapsed, &failures);
    assert!(elapsed < Duration::from_secs(300), "exceeded 5 min total");
}

#[test]
fn criterion_9_word_problem_deciders() {
    let started = Instant::now();
    let suite = suite_word_problems(&WordProblemsConfig {
        samples: 1_000,
        seed: 42,
    });
    let failures: Vec<String> = suite
        .cases
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{}: {}", c.id, c.witness.clone().unwrap_or_default()))
        .collect();
    assert_eq!(suite.cases.len(), 3);
    report("9 word-problem deciders", started.elapsed(), &failures);
}
