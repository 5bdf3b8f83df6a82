//! Named verification suites tying the library's operations to the results
//! they implement, with machine-readable reports. A suite outcome is
//! three-valued: `pass`, `fail` (counterexample found), or `exhausted`
//! (a bounded search gave up); exhaustion is never folded into the other
//! two.

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::{
    canonical_form, decompose, depth, depth_by_blocks, dividers, form_markers, h, max_level,
    well_balanced, Depth, DividerRef, Ladder,
};
use crate::families;
use crate::identity::{
    derive, first_witness, replay, Certificate, Derivation, DeriveBudget, DeriveOutcome, Identity,
    Substitution,
};
use crate::monoid::{builtin, Assignment, FiniteMonoid};
use crate::variety::{holds_in_f, holds_in_lrb, invariant_preserved, InvariantFn, NfbBudget};
use crate::words::{Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Exhausted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Totals {
    pub cases: usize,
    pub pass: usize,
    pub fail: usize,
    pub exhausted: usize,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseOutcome>,
    pub totals: Totals,
}

impl SuiteReport {
    fn from_cases(suite: &str, cases: Vec<CaseOutcome>, started: Instant) -> SuiteReport {
        let totals = Totals {
            cases: cases.len(),
            pass: cases.iter().filter(|c| c.status == Status::Pass).count(),
            fail: cases.iter().filter(|c| c.status == Status::Fail).count(),
            exhausted: cases
                .iter()
                .filter(|c| c.status == Status::Exhausted)
                .count(),
            wall_ms: started.elapsed().as_millis(),
        };
        SuiteReport {
            suite: suite.to_string(),
            cases,
            totals,
        }
    }

    /// Worst status across cases: fail > exhausted > pass.
    pub fn status(&self) -> Status {
        if self.totals.fail > 0 {
            Status::Fail
        } else if self.totals.exhausted > 0 {
            Status::Exhausted
        } else {
            Status::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn case(id: &str, result: Result<(), String>) -> CaseOutcome {
    match result {
        Ok(()) => CaseOutcome {
            id: id.to_string(),
            status: Status::Pass,
            witness: None,
        },
        Err(witness) => CaseOutcome {
            id: id.to_string(),
            status: Status::Fail,
            witness: Some(witness),
        },
    }
}

// ---------------------------------------------------------------------------
// Word corpus and random generation

/// All words of length <= max_len over the first `alphabet` letters of
/// x, y, z, u, v.
pub fn corpus(max_len: usize, alphabet: usize) -> Vec<Word> {
    const NAMES: [&str; 5] = ["x", "y", "z", "u", "v"];
    assert!(alphabet >= 1 && alphabet <= NAMES.len());
    let letters: Vec<Letter> = NAMES[..alphabet]
        .iter()
        .map(|n| Letter::new(n).unwrap())
        .collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let mut letters2 = w.letters().to_vec();
                letters2.push(l.clone());
                next.push(Word::new(letters2));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize, alphabet: usize) -> Word {
    const NAMES: [&str; 5] = ["x", "y", "z", "u", "v"];
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter::new(NAMES[rng.gen_range(0..alphabet)]).unwrap())
        .collect();
    Word::new(letters)
}

/// A random word without simple letters: each chosen letter occurs 2 or 3
/// times, shuffled; total length <= max_len.
pub fn random_simple_free_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    const NAMES: [&str; 4] = ["x", "y", "z", "u"];
    let mut letters = Vec::new();
    let mut budget = max_len;
    let mut idx = 0;
    while budget >= 2 && idx < NAMES.len() {
        let count = if budget >= 3 && rng.gen_bool(0.4) { 3 } else { 2 };
        for _ in 0..count {
            letters.push(Letter::new(NAMES[idx]).unwrap());
        }
        budget -= count;
        idx += 1;
        if idx >= 2 && rng.gen_bool(0.3) {
            break;
        }
    }
    // Fisher-Yates.
    for i in (1..letters.len()).rev() {
        let j = rng.gen_range(0..=i);
        letters.swap(i, j);
    }
    Word::new(letters)
}

/// Random identity pair biased toward structurally related sides, so
/// decider antecedents are not always vacuous.
pub fn random_identity(rng: &mut ChaCha8Rng, max_len: usize, alphabet: usize) -> Identity {
    let u = random_word(rng, max_len, alphabet);
    let v = match rng.gen_range(0..4) {
        0 => u.clone(),
        1 => {
            // Swap one adjacent pair.
            let mut letters = u.letters().to_vec();
            if letters.len() >= 2 {
                let i = rng.gen_range(0..letters.len() - 1);
                letters.swap(i, i + 1);
            }
            Word::new(letters)
        }
        2 => {
            // Append a letter that already occurs twice, if any.
            let mut letters = u.letters().to_vec();
            let mul: Vec<Letter> = u.multiple().into_iter().collect();
            if !mul.is_empty() {
                letters.push(mul[rng.gen_range(0..mul.len())].clone());
            }
            Word::new(letters)
        }
        _ => random_word(rng, max_len, alphabet),
    };
    Identity::new(u, v)
}

// ---------------------------------------------------------------------------
// Per-result checks over a single word (reused by the acceptance tests)

/// Divider membership at every level against the depth characterization,
/// plus agreement of the two depth routes.
pub fn check_divider_depth(w: &Word) -> Result<(), String> {
    let top = max_level(w);
    for k in 0..=top + 1 {
        let divs: Vec<Letter> = dividers(w, k)
            .iter()
            .filter_map(|d| d.letter().cloned())
            .collect();
        for t in w.content() {
            let d = depth(w, &t).map_err(|e| e.to_string())?;
            let by_blocks = depth_by_blocks(w, &t).map_err(|e| e.to_string())?;
            if d != by_blocks {
                return Err(format!(
                    "depth routes disagree on {t} in {w}: {d} vs {by_blocks}"
                ));
            }
            let is_div = divs.contains(&t);
            let depth_le = matches!(d, Depth::Finite(j) if j <= k);
            if is_div != depth_le {
                return Err(format!(
                    "{t} in {w}: divider at level {k} = {is_div}, depth = {d}"
                ));
            }
        }
    }
    Ok(())
}

/// Same check against an externally supplied divider list; used to verify
/// the failure path with an injected bug.
pub fn check_divider_depth_against(
    w: &Word,
    k: usize,
    claimed: &[DividerRef],
) -> Result<(), String> {
    let divs: Vec<Letter> = claimed.iter().filter_map(|d| d.letter().cloned()).collect();
    for t in w.content() {
        let d = depth(w, &t).map_err(|e| e.to_string())?;
        let is_div = divs.contains(&t);
        let depth_le = matches!(d, Depth::Finite(j) if j <= k);
        if is_div != depth_le {
            return Err(format!(
                "{t} in {w}: divider at level {k} = {is_div}, depth = {d}"
            ));
        }
    }
    Ok(())
}

/// If t = h(w, x, 2, k-1) is a letter for a letter x of depth k >= 1, then
/// the first occurrence of x precedes the first occurrence of t.
pub fn check_h2_order(w: &Word) -> Result<(), String> {
    for x in w.multiple() {
        let Ok(Depth::Finite(k)) = depth(w, &x) else {
            continue;
        };
        if k == 0 {
            continue;
        }
        if let DividerRef::First(occ) = h(w, &x, 2, k - 1).map_err(|e| e.to_string())? {
            let x1 = w.nth_occ(&x, 1).unwrap().position;
            let t1 = w.nth_occ(&occ.letter, 1).unwrap().position;
            if x1 >= t1 {
                return Err(format!(
                    "{w}: h2-pointer {t} of {x} does not follow first {x}",
                    t = occ.letter
                ));
            }
        }
    }
    Ok(())
}

/// Any (k-1)-divider t strictly between the occurrences of a depth-k letter
/// x has depth exactly k-1, and for k > 1 its second occurrence follows the
/// second occurrence of x.
pub fn check_between_divider(w: &Word) -> Result<(), String> {
    for x in w.multiple() {
        let Ok(Depth::Finite(k)) = depth(w, &x) else {
            continue;
        };
        if k == 0 {
            continue;
        }
        let x1 = w.nth_occ(&x, 1).unwrap().position;
        let x2 = w.nth_occ(&x, 2).unwrap().position;
        for d in dividers(w, k - 1) {
            let DividerRef::First(occ) = d else { continue };
            if occ.position <= x1 || occ.position >= x2 {
                continue;
            }
            let t = &occ.letter;
            if depth(w, t) != Ok(Depth::Finite(k - 1)) {
                return Err(format!(
                    "{w}: divider {t} between occurrences of {x} has depth {:?}",
                    depth(w, t)
                ));
            }
            if k > 1 {
                let t2 = w
                    .nth_occ(t, 2)
                    .map_err(|e| format!("{w}: {e}"))?
                    .position;
                if x2 >= t2 {
                    return Err(format!("{w}: second {t} does not follow second {x}"));
                }
            }
        }
    }
    Ok(())
}

/// If D(w, y) = r - 2 and a letter z of depth >= r starts before y, then z
/// also ends before y starts.
pub fn check_first_then_second(w: &Word) -> Result<(), String> {
    for y in w.content() {
        let Ok(Depth::Finite(dy)) = depth(w, &y) else {
            continue;
        };
        let r = dy + 2;
        let y1 = w.nth_occ(&y, 1).unwrap().position;
        for z in w.multiple() {
            let dz = depth(w, &z).unwrap();
            let deep_enough = match dz {
                Depth::Infinite => true,
                Depth::Finite(j) => j >= r,
            };
            if !deep_enough {
                continue;
            }
            let z1 = w.nth_occ(&z, 1).unwrap().position;
            let z2 = w.nth_occ(&z, 2).unwrap().position;
            if z1 < y1 && z2 >= y1 {
                return Err(format!(
                    "{w}: z={z} (depth {dz}) starts before y={y} (depth {dy}) but does not close"
                ));
            }
        }
    }
    Ok(())
}

/// canonical_form succeeds, reassembles, and validates for every letter of
/// finite positive depth.
pub fn check_canonical_form(w: &Word) -> Result<(), String> {
    for x in w.content() {
        match depth(w, &x).unwrap() {
            Depth::Finite(k) if k >= 1 => {
                let form = canonical_form(w, &x).map_err(|e| format!("{w}: {e}"))?;
                if form.reassemble() != *w {
                    return Err(format!("{w}: form for {x} does not reassemble"));
                }
                if !form.validate(w) {
                    return Err(format!("{w}: form for {x} fails validation"));
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// Second-occurrence jump: for y_m of depth m whose first occurrence
/// precedes the pivot letter of a canonical form with no (m-1)-divider in
/// between, the second occurrence of y_m lands in segment u_{2m}, u_{2m-1}
/// or u_{2m-2}.
pub fn check_second_jump(w: &Word) -> Result<(), String> {
    let ladder = Ladder::of(w);
    for x in w.content() {
        let Depth::Finite(k) = depth(w, &x).unwrap() else {
            continue;
        };
        if k == 0 {
            continue;
        }
        let form = canonical_form(w, &x).map_err(|e| format!("{w}: {e}"))?;
        // Marker positions, left to right.
        let mut positions = Vec::new();
        for (s, occ) in form_markers(k) {
            positions.push(w.nth_occ(&form.pivots[s], occ).unwrap().position);
        }
        let xk1 = positions[0];
        for y in w.multiple() {
            let Depth::Finite(m) = depth(w, &y).unwrap() else {
                continue;
            };
            if m == 0 || m > k + 1 {
                continue;
            }
            let y1 = w.nth_occ(&y, 1).unwrap().position;
            if y1 >= xk1 {
                continue;
            }
            if m >= 1 {
                // Hypothesis: no (m-1)-divider strictly between y1 and xk1.
                let dec = ladder.at(m - 1);
                let blocked = dec.parts.iter().any(|p| match &p.divider {
                    DividerRef::First(o) => o.position > y1 && o.position < xk1,
                    DividerRef::Boundary => false,
                });
                if blocked {
                    continue;
                }
            }
            let y2 = w.nth_occ(&y, 2).unwrap().position;
            // Segment u_j spans between consecutive markers; in the lemma's
            // indexing u_{2k+1} is split by y1 into u_{2k+2} and u_{2k+1}.
            let seg_of = |pos: usize| -> Option<usize> {
                if pos < y1 {
                    return Some(2 * k + 2);
                }
                if pos < xk1 {
                    return Some(2 * k + 1);
                }
                for (i, &mp) in positions.iter().enumerate() {
                    if pos == mp {
                        return None; // marker itself
                    }
                    if pos < mp {
                        return Some(2 * k + 1 - i);
                    }
                }
                Some(0)
            };
            if let Some(seg) = seg_of(y2) {
                if seg != 2 * m && seg != 2 * m - 1 && seg + 2 != 2 * m {
                    return Err(format!(
                        "{w}: second {y} (depth {m}) in segment {seg} of the {x}-form"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Decompositions tile the word at each level and stay stationary above
/// the maximal level.
pub fn check_reassembly_stationarity(w: &Word) -> Result<(), String> {
    let top = max_level(w);
    for k in 0..=top {
        if !decompose(w, k).reassembles(w) {
            return Err(format!("{w}: level {k} decomposition does not tile"));
        }
    }
    let stat = decompose(w, top);
    for j in 1..=3 {
        if decompose(w, top + j).parts != stat.parts {
            return Err(format!("{w}: decomposition changes above level {top}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// suite: decomposition

pub fn suite_decomposition(max_len: usize, alphabet: usize) -> SuiteReport {
    let started = Instant::now();
    let words = corpus(max_len, alphabet);
    let checks: Vec<(&str, fn(&Word) -> Result<(), String>)> = vec![
        ("divider-depth", check_divider_depth),
        ("h2-order", check_h2_order),
        ("between-divider", check_between_divider),
        ("first-then-second", check_first_then_second),
        ("canonical-form", check_canonical_form),
        ("second-jump", check_second_jump),
        ("reassembly-stationarity", check_reassembly_stationarity),
    ];
    let mut cases = Vec::new();
    for (id, check) in checks {
        let failure = words
            .par_iter()
            .enumerate()
            .filter_map(|(i, w)| check(w).err().map(|e| (i, e)))
            .min_by_key(|(i, _)| *i);
        cases.push(case(id, failure.map_or(Ok(()), |(_, e)| Err(e))));
    }
    SuiteReport::from_cases("decomposition", cases, started)
}

// ---------------------------------------------------------------------------
// Chain fixtures

/// A printed chain: words plus the axiom hint justifying each gap. Gaps may
/// need several single steps; `refine_chain` fills them in by bounded
/// search restricted to the hinted axiom (plus the ambient axiom).
pub struct PrintedChain {
    pub id: String,
    pub axioms: Vec<Identity>,
    pub words: Vec<Word>,
    pub hints: Vec<String>,
}

pub enum ChainOutcome {
    Verified(Derivation),
    Exhausted { gap: usize, explored: usize },
    Failed { gap: usize, reason: String },
}

/// Expands each printed gap into verified single steps: first a direct
/// one-step check under the hint, then bounded search as a fallback.
pub fn refine_chain(chain: &PrintedChain) -> ChainOutcome {
    let mut full = vec![chain.words[0].clone()];
    for (gap, pair) in chain.words.windows(2).enumerate() {
        let (from, to) = (&pair[0], &pair[1]);
        if from == to {
            continue;
        }
        let hint = &chain.hints[gap];
        let hint_axiom = chain
            .axioms
            .iter()
            .find(|a| &a.label() == hint)
            .cloned()
            .unwrap_or_else(|| panic!("unknown hint {hint}"));
        if first_witness(from, to, &hint_axiom).is_some() {
            full.push(to.clone());
            continue;
        }
        // Multi-application gap: search under the hint plus the ambient
        // axiom, which the printed chains interleave freely.
        let gap_axioms: Vec<Identity> = {
            let mut v = vec![hint_axiom];
            if !v.iter().any(|a| a.label() == "i11") {
                v.push(families::i11());
            }
            v
        };
        let budget = DeriveBudget {
            max_steps: 12,
            max_len: Some(from.len().max(to.len()) + 4),
            max_nodes: 60_000,
        };
        match derive(&gap_axioms, from, to, budget) {
            DeriveOutcome::Found(d) => {
                full.extend(d.chain[1..].iter().cloned());
            }
            DeriveOutcome::Exhausted { explored } => {
                return ChainOutcome::Exhausted { gap, explored };
            }
        }
    }
    match replay(&chain.axioms, &full, None) {
        Ok(derivation) => ChainOutcome::Verified(derivation),
        Err(e) => ChainOutcome::Failed {
            gap: 0,
            reason: e.to_string(),
        },
    }
}

fn w_of(parts: &[&Word]) -> Word {
    Word::concat(parts)
}

fn lw(names: &[&str]) -> Word {
    Word::new(names.iter().map(|n| Letter::new(n).unwrap()).collect())
}

fn yl(i: usize) -> String {
    format!("y{i}")
}

fn xl(i: usize) -> String {
    format!("x{i}")
}

/// The equivalence chain between kappa_k and delta_k^k: the printed
/// derivation of the delta right side from the left side under (1.1) and
/// kappa_k.
pub fn lemma33_chain(k: usize) -> PrintedChain {
    let kap = families::kappa(k).unwrap();
    let delta = families::delta(k, k).unwrap();
    let b_km1 = families::b_full(k - 1);
    let c = if k == 1 {
        Word::empty()
    } else {
        w_of(&[&lw(&[&xl(k - 2), &xl(k - 1), &xl(k)]), &families::b_full(k - 2)])
    };
    let d = if k == 1 {
        Word::empty()
    } else {
        w_of(&[
            &lw(&[&xl(k - 2), &xl(k), &xl(k - 1), &xl(k)]),
            &families::b_full(k - 2),
        ])
    };
    let head = lw(&[&yl(k + 1), &yl(k), &xl(k), &yl(k + 1), &xl(k - 1), &xl(k), &yl(k)]);
    let head_sq = lw(&[
        &yl(k + 1),
        &yl(k + 1),
        &yl(k),
        &xl(k),
        &xl(k - 1),
        &xl(k),
        &yl(k),
    ]);
    let head_swap = lw(&[
        &yl(k + 1),
        &yl(k),
        &yl(k + 1),
        &xl(k),
        &xl(k - 1),
        &xl(k),
        &yl(k),
    ]);
    let xk = lw(&[&xl(k)]);
    let words = vec![
        delta.lhs.clone(),
        w_of(&[&head, &xk, &c]),
        w_of(&[&head_sq, &xk, &c]),
        w_of(&[&head_sq, &d]),
        w_of(&[&head_swap, &d]),
        w_of(&[&head_swap, &b_km1]),
    ];
    debug_assert_eq!(words[5], delta.rhs);
    PrintedChain {
        id: format!("lemma33:k{k}"),
        axioms: vec![families::i11(), kap.clone()],
        words,
        hints: vec![
            "i11".into(),
            kap.label(),
            "i11".into(),
            kap.label(),
            "i11".into(),
        ],
    }
}

/// The six-line chain deriving gamma_{k+1} from kappa_k, epsilon_0, (1.1)
/// and delta_k^m.
pub fn lemma65_chain(k: usize, m: usize) -> PrintedChain {
    let kap = families::kappa(k).unwrap();
    let eps0 = families::epsilon(0).unwrap();
    let del = families::delta(k, m).unwrap();
    let gamma_next = families::gamma(k + 1).unwrap();
    let bk = families::b_full(k);
    let bkm = families::b(k, m).unwrap();
    let bm1 = families::b_full(m - 1);
    let y1y0 = lw(&["y1", "y0"]);
    let y1 = lw(&["y1"]);
    let xk1 = lw(&[&xl(k + 1)]);
    let xk = lw(&[&xl(k)]);
    let words = vec![
        gamma_next.rhs.clone(),
        w_of(&[&y1y0, &y1, &xk1, &xk1, &xk, &bk]),
        w_of(&[&y1y0, &xk1, &y1, &xk1, &xk, &bk]),
        w_of(&[&y1y0, &xk1, &y1, &xk1, &xk, &bkm, &y1, &bm1]),
        w_of(&[&y1y0, &xk1, &y1, &xk, &xk1, &bkm, &y1, &bm1]),
        gamma_next.lhs.clone(),
    ];
    debug_assert_eq!(
        words[0],
        w_of(&[&y1y0, &y1, &xk1, &xk, &xk1, &bk]),
        "gamma rhs shape"
    );
    PrintedChain {
        id: format!("lemma65:k{k}m{m}"),
        axioms: vec![families::i11(), kap.clone(), eps0.clone(), del.clone()],
        words,
        hints: vec![
            kap.label(),
            eps0.label(),
            "i11".into(),
            del.label(),
            "i11".into(),
        ],
    }
}

/// The chain deriving delta_{k+1}^m from kappa_k, epsilon_m, (1.1) and
/// delta_k^k.
pub fn lemma66_chain(k: usize, m: usize) -> PrintedChain {
    let kap = families::kappa(k).unwrap();
    let eps = families::epsilon(m).unwrap();
    let delkk = families::delta(k, k).unwrap();
    let target = families::delta(k + 1, m).unwrap();
    let bkm = families::b(k, m).unwrap();
    let bkk = families::b(k, k).unwrap();
    let bk1m = if k >= 1 {
        families::b(k - 1, m).unwrap_or_else(|_| Word::empty())
    } else {
        Word::empty()
    };
    let d1 = match m {
        1 => lw(&[&yl(1)]),
        2 => lw(&[&yl(2), &xl(0), &xl(1)]),
        _ => w_of(&[
            &lw(&[&yl(m), &xl(m - 2), &xl(m - 1), &xl(m - 3), &yl(m), &xl(m - 2)]),
            &families::b_full(m - 3),
        ]),
    };
    // For m >= 2 the segment must start with y_m so that the epsilon step
    // matches: its image of b_m is (x_k b_{k,m}) y_m x_{m-2} (x_k b_{k,m})
    // b_{m-2}.
    let d2 = match m {
        1 => lw(&[&yl(1)]),
        _ => w_of(&[
            &lw(&[&yl(m), &xl(m - 2), &xl(k)]),
            &bkm,
            &families::b_full(m - 2),
        ]),
    };
    let ym1 = lw(&[&yl(m + 1)]);
    let ym = lw(&[&yl(m)]);
    let xk1 = lw(&[&xl(k + 1)]);
    let xk = lw(&[&xl(k)]);
    let words = vec![
        target.rhs.clone(),
        w_of(&[&ym1, &ym, &ym1, &xk1, &xk, &xk1, &bkm, &d1]),
        w_of(&[&ym1, &ym, &ym1, &xk1, &xk1, &xk, &bkm, &d1]),
        w_of(&[&ym1, &ym, &ym1, &xk1, &xk1, &xk, &bkm, &d2]),
        w_of(&[&ym1, &ym, &xk1, &ym1, &xk1, &xk, &bkm, &d2]),
        w_of(&[&ym1, &ym, &xk1, &ym1, &xk1, &xk, &bkk, &ym1, &bk1m, &d1]),
        w_of(&[&ym1, &ym, &xk1, &ym1, &xk, &xk1, &bkk, &ym1, &bk1m, &d1]),
        target.lhs.clone(),
    ];
    PrintedChain {
        id: format!("lemma66:k{k}m{m}"),
        axioms: vec![families::i11(), kap.clone(), eps.clone(), delkk.clone()],
        words,
        hints: vec![
            "i11".into(),
            kap.label(),
            "i11".into(),
            eps.label(),
            "i11".into(),
            delkk.label(),
            "i11".into(),
        ],
    }
}

/// The substitution consequences behind the inclusion ladder: applying
/// phi_1 / phi_2 / phi_3 to delta_k^m lands, modulo the ambient axiom, on
/// delta_{k+1}^m / epsilon_m / delta_k^{m+1} side by side.
pub fn lemma34_substitution(which: u8, k: usize, m: usize) -> Option<(Substitution, Identity, Identity)> {
    let source = families::delta(k, m).ok()?;
    match which {
        1 => {
            let mut phi = Substitution::new();
            phi.bind(
                Letter::new(&xl(m - 1)).unwrap(),
                lw(&[&xl(m), &xl(m + 1), &xl(m - 1), &xl(m)]),
            );
            for j in m..=k {
                phi.bind(Letter::new(&xl(j)).unwrap(), lw(&[&xl(j + 1)]));
            }
            Some((phi, source, families::delta(k + 1, m).ok()?))
        }
        2 => {
            let mut phi = Substitution::new();
            phi.bind(Letter::new(&xl(m - 1)).unwrap(), lw(&["x", &xl(m - 1)]));
            for j in m..k {
                phi.bind(Letter::new(&xl(j)).unwrap(), Word::empty());
            }
            phi.bind(Letter::new(&xl(k)).unwrap(), lw(&["x"]));
            phi.bind(Letter::new(&yl(m)).unwrap(), lw(&[&xl(m)]));
            Some((phi, source, families::epsilon(m).ok()?))
        }
        3 => {
            if m >= k {
                return None;
            }
            let mut phi = Substitution::new();
            phi.bind(
                Letter::new(&xl(m - 1)).unwrap(),
                lw(&[&yl(m + 1), &xl(m - 1)]),
            );
            phi.bind(Letter::new(&yl(m)).unwrap(), lw(&[&yl(m + 1)]));
            phi.bind(Letter::new(&yl(m + 1)).unwrap(), lw(&[&yl(m + 2)]));
            Some((phi, source, families::delta(k, m + 1).ok()?))
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Island elimination (the squared-initial-part normal form)

/// Builds the rewrite chain taking a word without simple letters to its
/// squared initial part, following the island-elimination induction: the
/// chain uses only (1.1) and (3.2) steps and is meant to be verified by
/// `replay`.
pub fn ini_sq_chain(w: &Word) -> Result<(Vec<Word>, Vec<String>), String> {
    if !w.simple().is_empty() {
        return Err(format!("{w} contains simple letters"));
    }
    let mut words = vec![w.clone()];
    let mut hints = Vec::new();
    let push = |words: &mut Vec<Word>, hints: &mut Vec<String>, next: Word, hint: &str| {
        hints.push(hint.to_string());
        words.push(next);
    };

    // Phase A: drop third and later occurrences, leftmost first.
    loop {
        let cur = words.last().unwrap().clone();
        let Some(pos) = (0..cur.len()).find(|&p| cur.occ_index_at(p) >= 3) else {
            break;
        };
        let mut letters = cur.letters().to_vec();
        letters.remove(pos);
        push(&mut words, &mut hints, Word::new(letters), "i11");
    }

    // Phase B: island one letter per round.
    loop {
        let cur = words.last().unwrap().clone();
        let Some(x) = pick_non_island(&cur) else {
            break;
        };
        island_round(&cur, &x, &mut words, &mut hints)?;
    }

    let expected = w.ini_sq();
    if words.last() != Some(&expected) {
        return Err(format!(
            "island elimination ended at {} instead of {expected}",
            words.last().unwrap()
        ));
    }
    Ok((words, hints))
}

/// Non-island letter whose first occurrence is right-most; all letters in
/// its gap are then second occurrences or complete islands.
fn pick_non_island(w: &Word) -> Option<Letter> {
    let mut best: Option<(usize, Letter)> = None;
    for l in w.multiple() {
        let p1 = w.nth_occ(&l, 1).unwrap().position;
        let p2 = w.nth_occ(&l, 2).unwrap().position;
        if p2 == p1 + 1 {
            continue; // island
        }
        if best.as_ref().map_or(true, |(bp, _)| p1 > *bp) {
            best = Some((p1, l));
        }
    }
    best.map(|(_, l)| l)
}

fn island_round(
    start: &Word,
    x: &Letter,
    words: &mut Vec<Word>,
    hints: &mut Vec<String>,
) -> Result<(), String> {
    let step = |words: &mut Vec<Word>, hints: &mut Vec<String>, next: Vec<Letter>, hint: &str| {
        hints.push(hint.to_string());
        words.push(Word::new(next));
    };
    let p1 = start.nth_occ(x, 1).unwrap().position;
    let p2 = start.nth_occ(x, 2).unwrap().position;

    // Gap blocks: (letter, multiplicity in the gap).
    let mut blocks: Vec<(Letter, usize)> = Vec::new();
    for l in &start.letters()[p1 + 1..p2] {
        match blocks.last_mut() {
            Some((prev, count)) if prev == l => *count += 1,
            _ => blocks.push((l.clone(), 1)),
        }
    }
    let ys: Vec<Letter> = blocks.iter().map(|(l, _)| l.clone()).collect();
    let n = ys.len();
    let distinct: crate::words::LetterSet = ys.iter().cloned().collect();
    if blocks.iter().any(|(_, c)| *c > 2) || distinct.len() != n {
        return Err(format!("unexpected gap shape in {start}"));
    }

    // B1: square every singleton gap letter.
    for (y, count) in &blocks {
        if *count == 1 {
            let cur = words.last().unwrap();
            let gp1 = cur.nth_occ(x, 1).unwrap().position;
            let gp2 = cur.nth_occ(x, 2).unwrap().position;
            let pos = (gp1 + 1..gp2)
                .find(|&p| &cur.letters()[p] == y)
                .ok_or_else(|| format!("gap letter {y} vanished"))?;
            let mut letters = cur.letters().to_vec();
            letters.insert(pos + 1, y.clone());
            step(words, hints, letters, "i11");
        }
    }

    // B2: copy the squared gap after the second x, letter by letter.
    {
        for (i, y) in ys.iter().enumerate() {
            for j in 0..2 {
                let cur = words.last().unwrap();
                let gp2 = cur.nth_occ(x, 2).unwrap().position;
                let mut letters = cur.letters().to_vec();
                letters.insert(gp2 + 1 + 2 * i + j, y.clone());
                step(words, hints, letters, "i11");
            }
        }
    }

    // B3: merge each square block into a repeated product (backward square
    // steps), right to left, in both copies.
    for copy in 0..2 {
        for i in (1..n).rev() {
            let cur = words.last().unwrap();
            let anchor = cur.nth_occ(x, 1 + copy).unwrap().position;
            let except = merged_block(&ys, i);
            let mut letters = cur.letters()[..anchor + 1].to_vec();
            letters.extend(except);
            letters.extend_from_slice(&cur.letters()[anchor + 1 + 2 * n..]);
            step(words, hints, letters, "xyxy");
        }
    }

    // B4: x (Y)(Y) x (Y)(Y) -> x x (Y)(Y)(Y)(Y).
    {
        let cur = words.last().unwrap();
        let gp1 = cur.nth_occ(x, 1).unwrap().position;
        let mut letters = cur.letters()[..gp1].to_vec();
        letters.push(x.clone());
        letters.push(x.clone());
        for _ in 0..4 {
            letters.extend(ys.iter().cloned());
        }
        letters.extend_from_slice(&cur.letters()[gp1 + 2 + 4 * n..]);
        step(words, hints, letters, "xyxy");
    }

    // B5: delete surplus copies right to left until each gap letter is back
    // to its original multiplicity.
    {
        let cur = words.last().unwrap().clone();
        let gp1 = cur.nth_occ(x, 1).unwrap().position;
        let block = gp1 + 2..gp1 + 2 + 4 * n;
        for q in block.clone().rev() {
            let cur = words.last().unwrap().clone();
            let letter = cur.letters()[q].clone();
            let target = blocks
                .iter()
                .find(|(l, _)| *l == letter)
                .map(|(_, c)| *c)
                .unwrap();
            let before = cur.letters()[block.start..q]
                .iter()
                .filter(|l| **l == letter)
                .count();
            if before >= target {
                let mut letters = cur.letters().to_vec();
                letters.remove(q);
                step(words, hints, letters, "i11");
            }
        }
    }
    Ok(())
}

/// y_1^2 ... y_{i-1}^2 followed by two copies of y_i ... y_n.
fn merged_block(ys: &[Letter], i: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for y in &ys[..i - 1] {
        out.push(y.clone());
        out.push(y.clone());
    }
    for _ in 0..2 {
        out.extend(ys[i - 1..].iter().cloned());
    }
    out
}

// ---------------------------------------------------------------------------
// suite: chains

pub struct ChainsConfig<'a> {
    pub k_max: usize,
    pub island_words: usize,
    pub seed: u64,
    pub cert_dir: Option<&'a Path>,
}

impl Default for ChainsConfig<'_> {
    fn default() -> Self {
        ChainsConfig {
            k_max: 3,
            island_words: 50,
            seed: 42,
            cert_dir: None,
        }
    }
}

pub fn suite_chains(config: &ChainsConfig) -> SuiteReport {
    let started = Instant::now();
    let mut cases = Vec::new();

    let chain_case = |cases: &mut Vec<CaseOutcome>, chain: PrintedChain| {
        let id = chain.id.clone();
        match refine_chain(&chain) {
            ChainOutcome::Verified(derivation) => {
                let result = store_and_reverify(&chain.axioms, &derivation, &id, config.cert_dir);
                cases.push(case(&id, result));
            }
            ChainOutcome::Exhausted { gap, explored } => cases.push(CaseOutcome {
                id,
                status: Status::Exhausted,
                witness: Some(format!("gap {gap} unresolved after {explored} nodes")),
            }),
            ChainOutcome::Failed { reason, .. } => cases.push(CaseOutcome {
                id,
                status: Status::Fail,
                witness: Some(reason),
            }),
        }
    };

    for k in 1..=config.k_max {
        chain_case(&mut cases, lemma33_chain(k));
    }

    // Substitution consequences, each side derived under the ambient axiom.
    let sub_max = config.k_max.min(2);
    for k in 1..=sub_max {
        for m in 1..=k {
            for which in [1u8, 2, 3] {
                let Some((phi, source, target)) = lemma34_substitution(which, k, m) else {
                    continue;
                };
                let id = format!("lemma34:phi{which}:k{k}m{m}");
                let image = phi.apply_identity(&source);
                let ambient = [families::i11()];
                let budget = DeriveBudget {
                    max_steps: 8,
                    max_len: None,
                    max_nodes: 60_000,
                };
                let mut outcome = Ok(());
                let mut exhausted = false;
                for (side, from, to) in [
                    ("lhs", &image.lhs, &target.lhs),
                    ("rhs", &image.rhs, &target.rhs),
                ] {
                    match derive(&ambient, from, to, budget) {
                        DeriveOutcome::Found(d) => {
                            if !d.verify(&ambient) {
                                outcome = Err(format!("{side} derivation fails re-verification"));
                                break;
                            }
                        }
                        DeriveOutcome::Exhausted { .. } => {
                            exhausted = true;
                            break;
                        }
                    }
                }
                if exhausted {
                    cases.push(CaseOutcome {
                        id,
                        status: Status::Exhausted,
                        witness: None,
                    });
                } else {
                    cases.push(case(&id, outcome));
                }
            }
        }
    }

    // Island elimination on random simple-letter-free words.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let axioms = vec![families::i11(), families::xyxy()];
    for i in 0..config.island_words {
        let word = random_simple_free_word(&mut rng, 10);
        let id = format!("lemma35:{i:02}");
        let result = ini_sq_chain(&word).and_then(|(chain, hints)| {
            let derivation =
                replay(&axioms, &chain, Some(&hints)).map_err(|e| format!("{word}: {e}"))?;
            if derivation.last() != &word.ini_sq() {
                return Err(format!("{word}: chain misses the squared initial part"));
            }
            store_and_reverify(&axioms, &derivation, &id, config.cert_dir)
        });
        cases.push(case(&id, result));
    }

    let k66 = config.k_max.min(2);
    for k in 1..=k66 {
        for m in 1..=k {
            chain_case(&mut cases, lemma65_chain(k, m));
            chain_case(&mut cases, lemma66_chain(k, m));
        }
    }

    SuiteReport::from_cases("chains", cases, started)
}

fn store_and_reverify(
    axioms: &[Identity],
    derivation: &Derivation,
    id: &str,
    cert_dir: Option<&Path>,
) -> Result<(), String> {
    if !derivation.verify(axioms) {
        return Err("derivation fails re-verification".to_string());
    }
    let Some(dir) = cert_dir else {
        return Ok(());
    };
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let path = dir.join(format!("{}.json", id.replace([':', '/'], "_")));
    let cert = Certificate::from_derivation(axioms, derivation);
    std::fs::write(&path, cert.to_json()).map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let reloaded = Certificate::from_json(&text).map_err(|e| e.to_string())?;
    reloaded
        .verify(axioms)
        .map(|_| ())
        .map_err(|e| format!("stored certificate fails replay: {e}"))
}

// ---------------------------------------------------------------------------
// suite: monoid

/// The conditional inclusion ladder instances checked on the 5-element
/// monoid: pairs (antecedent, consequent) read as implications between
/// exhaustive satisfaction checks.
pub fn ladder_implications(k_max: usize) -> Vec<(Identity, Identity)> {
    let mut out = Vec::new();
    let mut push = |a: Identity, b: Identity| out.push((a, b));
    for k in 1..=k_max {
        push(
            families::gamma(k).unwrap(),
            families::gamma(k + 1).unwrap(),
        );
        push(families::gamma(k).unwrap(), families::epsilon(0).unwrap());
        push(families::gamma(k).unwrap(), families::delta(k, 1).unwrap());
        for m in 1..=k {
            let d = families::delta(k, m).unwrap();
            push(d.clone(), families::delta(k + 1, m).unwrap());
            push(d.clone(), families::epsilon(m).unwrap());
            if m < k {
                push(d.clone(), families::delta(k, m + 1).unwrap());
            }
        }
        push(
            families::epsilon(k - 1).unwrap(),
            families::epsilon(k).unwrap(),
        );
        push(families::epsilon(k - 1).unwrap(), families::xyxy());
        // Second-occurrence ladders.
        push(families::zeta(k - 1).unwrap(), families::zeta(k).unwrap());
        push(families::zeta(k - 1).unwrap(), families::nu(0).unwrap());
        push(families::nu(k - 1).unwrap(), families::nu(k).unwrap());
        push(
            families::epsilon(k - 1).unwrap(),
            families::zeta(k - 1).unwrap(),
        );
        push(
            families::zeta(k - 1).unwrap(),
            families::lambda(k, 1).unwrap(),
        );
        push(families::eta(k - 1).unwrap(), families::eta(k).unwrap());
        for m in 1..=k {
            let l = families::lambda(k, m).unwrap();
            let mu = families::mu(k, m).unwrap();
            push(l.clone(), families::lambda(k + 1, m).unwrap());
            push(mu.clone(), families::mu(k + 1, m).unwrap());
            if m < k {
                push(l.clone(), families::lambda(k, m + 1).unwrap());
                push(mu.clone(), families::mu(k, m + 1).unwrap());
            }
        }
    }
    out
}

pub fn suite_monoid(k_max: usize) -> SuiteReport {
    let started = Instant::now();
    let mut cases = Vec::new();

    let p21 = builtin("p21").expect("builtin");
    let b21 = builtin("b21").expect("builtin");
    let lz = builtin("lz2_1").expect("builtin");

    let model_case = |m: &FiniteMonoid, id: &Identity, case_id: &str| -> CaseOutcome {
        case(
            case_id,
            match m.counterexample(id) {
                None => Ok(()),
                Some(asg) => Err(format!("{id} fails at {}", m.render_assignment(&asg))),
            },
        )
    };
    cases.push(model_case(&p21, &families::i11(), "p21:i11"));
    cases.push(model_case(&p21, &families::xsytxy(), "p21:xsytxy"));
    cases.push(model_case(&lz, &families::lrb_ax(), "lz2_1:lrb"));

    // B21 satisfies its defining relations as ground equations.
    let ground_eq = |lhs: &str, rhs: &str| -> Result<(), String> {
        let asg: Assignment = [
            (Letter::new("a").unwrap(), b21.element_index("a").unwrap()),
            (Letter::new("b").unwrap(), b21.element_index("b").unwrap()),
        ]
        .into_iter()
        .collect();
        let l = b21.eval(&Word::parse(lhs).unwrap(), &asg).unwrap();
        let r = match rhs {
            "0" => b21.element_index("0").unwrap(),
            other => b21
                .eval(&Word::parse(other).unwrap(), &asg)
                .map_err(|e| e.to_string())?,
        };
        if l == r {
            Ok(())
        } else {
            Err(format!(
                "{lhs} = {} but expected {}",
                b21.elements[l], rhs
            ))
        }
    };
    cases.push(case(
        "b21:relations",
        ground_eq("a b a", "a")
            .and_then(|_| ground_eq("b a b", "b"))
            .and_then(|_| ground_eq("a a", "0"))
            .and_then(|_| ground_eq("b b", "0")),
    ));

    for (i, (ante, cons)) in ladder_implications(k_max).into_iter().enumerate() {
        let id = format!("ladder:{i:02}:{}=>{}", ante.label(), cons.label());
        let result = if p21.satisfies(&ante) && !p21.satisfies(&cons) {
            Err(format!(
                "p21 satisfies {} but violates {}",
                ante.label(),
                cons.label()
            ))
        } else {
            Ok(())
        };
        cases.push(case(&id, result));
    }

    SuiteReport::from_cases("monoid", cases, started)
}

// ---------------------------------------------------------------------------
// suite: nfb

pub struct NfbConfig {
    pub n_max: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for NfbConfig {
    fn default() -> Self {
        NfbConfig {
            n_max: 1,
            samples: 10_000,
            seed: 42,
        }
    }
}

/// The bounded falsification-evidence runs: axiom set, seed pattern, and
/// the invariant. A violation would contradict the corresponding
/// non-deducibility claim and is reported as a failure.
pub fn nfb_runs(n_max: usize) -> Vec<(String, Vec<Identity>, Word)> {
    let mut out = Vec::new();
    let pat = |s: &str| Word::parse(s).unwrap();
    out.push((
        "nfb:kappa1:xytxy".to_string(),
        vec![families::i11(), families::kappa(1).unwrap()],
        pat("x y t x y"),
    ));
    out.push((
        "nfb:eta1:xx1yxyx0x1".to_string(),
        vec![families::i11(), families::eta(1).unwrap()],
        pat("x x1 y x y x0 x1"),
    ));
    out.push((
        "nfb:omega1:xsytxy".to_string(),
        families::omega(1, n_max).unwrap(),
        pat("x s y t x y"),
    ));
    out.push((
        "nfb:omega2:xtyxy".to_string(),
        families::omega(2, n_max).unwrap(),
        pat("x t y x y"),
    ));
    // Cores of the non-finite-basability arguments: the truncated pool
    // below n cannot reorder the n-th pair word.
    let e2 = families::Perm::identity(2);
    out.push((
        "nfb:delta1:w1".to_string(),
        vec![families::i11(), families::kappa(1).unwrap()],
        families::w_pair(1, &e2, &e2).unwrap().lhs,
    ));
    out.push((
        "nfb:delta1:z1".to_string(),
        vec![families::i11(), families::eta(1).unwrap()],
        families::z_pair(1, &e2, &e2).unwrap().lhs,
    ));
    out
}

pub fn suite_nfb(config: &NfbConfig) -> SuiteReport {
    let started = Instant::now();
    let mut cases = Vec::new();
    for (id, axioms, pattern) in nfb_runs(config.n_max) {
        let invariant = InvariantFn::Ini2Retain(pattern.content());
        let report = invariant_preserved(
            &axioms,
            &invariant,
            &[pattern.clone()],
            NfbBudget {
                samples: config.samples,
                // Wide enough that the walk space is not exhausted below
                // the sample budget.
                max_word_len: pattern.len() + 8,
                ..NfbBudget::default()
            },
            config.seed,
        );
        let result = if report.passed() {
            Ok(())
        } else {
            Err(format!(
                "inconsistent with the source claim: {}",
                report.violations[0]
            ))
        };
        let mut outcome = case(&id, result);
        if outcome.status == Status::Pass {
            outcome.witness = Some(report.summary());
        }
        cases.push(outcome);
    }
    SuiteReport::from_cases("nfb", cases, started)
}

// ---------------------------------------------------------------------------
// suite: word problems

pub struct WordProblemsConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for WordProblemsConfig {
    fn default() -> Self {
        WordProblemsConfig {
            samples: 1_000,
            seed: 42,
        }
    }
}

pub fn suite_word_problems(config: &WordProblemsConfig) -> SuiteReport {
    let started = Instant::now();
    let mut cases = Vec::new();
    let lz = builtin("lz2_1").expect("builtin");

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let ids: Vec<Identity> = (0..config.samples)
        .map(|_| random_identity(&mut rng, 8, 4))
        .collect();

    // ini-decider acceptance implies truth in the left-zero model.
    let result = ids
        .iter()
        .filter(|id| holds_in_lrb(id))
        .find_map(|id| {
            lz.counterexample(id)
                .map(|asg| format!("{id} accepted but fails at {}", lz.render_assignment(&asg)))
        })
        .map_or(Ok(()), Err);
    cases.push(case("lrb-model", result));

    // Tower monotonicity.
    let result = ids
        .iter()
        .find_map(|id| {
            for k in 1..=2 {
                if holds_in_f(k + 1, id) && !holds_in_f(k, id) {
                    return Some(format!("{id}: level {} holds but level {k} fails", k + 1));
                }
            }
            None
        })
        .map_or(Ok(()), Err);
    cases.push(case("f-chain", result));

    // Acceptance at level k forces a (k-1)-well-balanced identity.
    let result = ids
        .iter()
        .find_map(|id| {
            for k in 1..=2 {
                if holds_in_f(k, id) && !well_balanced(&id.lhs, &id.rhs, k - 1) {
                    return Some(format!("{id}: level {k} holds but not {}-well-balanced", k - 1));
                }
            }
            None
        })
        .map_or(Ok(()), Err);
    cases.push(case("well-balanced", result));

    SuiteReport::from_cases("word-problems", cases, started)
}

// ---------------------------------------------------------------------------

/// Runs every suite with the given knobs, in a fixed order.
pub struct AllConfig {
    pub max_len: usize,
    pub alphabet: usize,
    pub k_max: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for AllConfig {
    fn default() -> Self {
        AllConfig {
            max_len: 6,
            alphabet: 3,
            k_max: 3,
            samples: 10_000,
            seed: 42,
        }
    }
}

pub fn run_all(config: &AllConfig, cert_dir: Option<&Path>) -> Vec<SuiteReport> {
    vec![
        suite_decomposition(config.max_len, config.alphabet),
        suite_chains(&ChainsConfig {
            k_max: config.k_max,
            island_words: 50,
            seed: config.seed,
            cert_dir,
        }),
        suite_monoid(config.k_max),
        suite_nfb(&NfbConfig {
            n_max: 1,
            samples: config.samples,
            seed: config.seed,
        }),
        suite_word_problems(&WordProblemsConfig {
            samples: 1_000,
            seed: config.seed,
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        // 3^0 + 3^1 + ... + 3^3 = 40
        assert_eq!(corpus(3, 3).len(), 40);
        assert_eq!(corpus(1, 1).len(), 2);
    }

    #[test]
    fn decomposition_suite_small() {
        let report = suite_decomposition(4, 2);
        assert_eq!(report.status(), Status::Pass, "{}", report.to_json());
    }

    #[test]
    fn injected_divider_bug_is_caught() {
        let w = Word::parse("x s x t").unwrap();
        // Drop a real divider from the claimed list.
        let mut divs = dividers(&w, 0);
        divs.pop();
        let err = check_divider_depth_against(&w, 0, &divs).unwrap_err();
        assert!(err.contains("divider"));
    }

    #[test]
    fn lemma33_chain_verifies() {
        for k in 1..=2 {
            let chain = lemma33_chain(k);
            match refine_chain(&chain) {
                ChainOutcome::Verified(d) => assert!(d.verify(&chain.axioms)),
                _ => panic!("lemma33 k={k} did not verify"),
            }
        }
    }

    #[test]
    fn lemma65_66_chains_verify() {
        for (k, m) in [(1, 1), (2, 1), (2, 2)] {
            for chain in [lemma65_chain(k, m), lemma66_chain(k, m)] {
                let id = chain.id.clone();
                match refine_chain(&chain) {
                    ChainOutcome::Verified(d) => assert!(d.verify(&chain.axioms), "{id}"),
                    _ => panic!("{id} did not verify"),
                }
            }
        }
    }

    #[test]
    fn island_chain_reaches_squared_initial_part() {
        let axioms = vec![families::i11(), families::xyxy()];
        for s in ["x y x y", "x x y y", "x y y x", "x y z x z y", "x y x z y z x"] {
            let w = Word::parse(s).unwrap();
            let (chain, hints) = ini_sq_chain(&w).unwrap();
            let d = replay(&axioms, &chain, Some(&hints)).unwrap();
            assert_eq!(d.last(), &w.ini_sq(), "{s}");
            assert!(d.verify(&axioms), "{s}");
        }
    }

    #[test]
    fn island_chain_rejects_simple_letters() {
        assert!(ini_sq_chain(&Word::parse("x y x").unwrap()).is_err());
    }

    #[test]
    fn monoid_suite_passes() {
        let report = suite_monoid(2);
        assert_eq!(report.status(), Status::Pass, "{}", report.to_json());
    }

    #[test]
    fn word_problem_suite_passes() {
        let report = suite_word_problems(&WordProblemsConfig {
            samples: 200,
            seed: 7,
        });
        assert_eq!(report.status(), Status::Pass, "{}", report.to_json());
    }

    #[test]
    fn report_json_round_trips() {
        let report = suite_monoid(1);
        let text = report.to_json();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.totals.cases, report.totals.cases);
        assert_eq!(back.suite, "monoid");
    }
}
