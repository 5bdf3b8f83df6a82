//! Level-k decompositions of words into alternating dividers and blocks,
//! letter depth, the `h` pointers, well-balanced identity tests, subword
//! depth, and extraction of the nested canonical form around a letter of
//! finite depth.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::words::{Letter, LetterSet, OccRef, Word, WordError};

/// A divider in a decomposition: the formal boundary divider (the empty
/// word) or the first occurrence of a letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DividerRef {
    Boundary,
    First(OccRef),
}

impl DividerRef {
    pub fn letter(&self) -> Option<&Letter> {
        match self {
            DividerRef::Boundary => None,
            DividerRef::First(occ) => Some(&occ.letter),
        }
    }

    /// Position usable for "precedes" comparisons; the boundary precedes
    /// every position.
    fn position(&self) -> Option<usize> {
        match self {
            DividerRef::Boundary => None,
            DividerRef::First(occ) => Some(occ.position),
        }
    }
}

impl fmt::Display for DividerRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DividerRef::Boundary => f.write_str("λ"),
            DividerRef::First(occ) => write!(f, "{}", occ.letter),
        }
    }
}

/// One divider and the block to its right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Part {
    pub divider: DividerRef,
    pub block: Range<usize>,
}

/// A level-k decomposition: alternating dividers and blocks, starting with
/// the boundary divider and ending with a block. Concatenating dividers and
/// blocks in order reproduces the word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub level: usize,
    pub parts: Vec<Part>,
}

/// Where an occurrence sits in a decomposition: either it is the j-th
/// divider or it lies inside the j-th block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Placement {
    Divider(usize),
    Block(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn is_finite(&self) -> bool {
        matches!(self, Depth::Finite(_))
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(k) => write!(f, "{k}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("letter `{letter}` has depth {depth}, expected finite positive depth")]
    DepthNotFinitePositive { letter: Letter, depth: Depth },
    #[error("no valid form decomposition found for `{letter}` (unexpected)")]
    NoFormFound { letter: Letter },
}

impl Decomposition {
    pub fn dividers(&self) -> Vec<&DividerRef> {
        self.parts.iter().map(|p| &p.divider).collect()
    }

    /// Letters of the non-boundary dividers, in order.
    pub fn divider_letters(&self) -> Vec<Letter> {
        self.parts
            .iter()
            .filter_map(|p| p.divider.letter().cloned())
            .collect()
    }

    /// Placement of the occurrence at `pos`.
    pub fn placement(&self, pos: usize) -> Placement {
        for (j, part) in self.parts.iter().enumerate() {
            if part.divider.position() == Some(pos) {
                return Placement::Divider(j);
            }
            if part.block.contains(&pos) {
                return Placement::Block(j);
            }
        }
        unreachable!("position outside decomposition")
    }

    /// Checks that dividers and blocks tile the word exactly.
    pub fn reassembles(&self, w: &Word) -> bool {
        let mut expect = 0usize;
        for part in &self.parts {
            match part.divider.position() {
                None => {}
                Some(p) => {
                    if p != expect {
                        return false;
                    }
                    expect += 1;
                }
            }
            if part.block.start != expect {
                return false;
            }
            expect = part.block.end;
        }
        expect == w.len()
    }

    /// Renders as `[λ](x)[s](x)[t]()`.
    pub fn render(&self, w: &Word) -> String {
        let mut out = String::new();
        for part in &self.parts {
            out.push('[');
            out.push_str(&part.divider.to_string());
            out.push(']');
            out.push('(');
            let block: Vec<String> = w.letters()[part.block.clone()]
                .iter()
                .map(|l| l.to_string())
                .collect();
            out.push_str(&block.join(" "));
            out.push(')');
        }
        out
    }
}

/// The level-0 decomposition: dividers are the boundary plus the simple
/// letters of `w` in order of occurrence.
fn decompose_0(w: &Word) -> Decomposition {
    let sim = w.simple();
    let mut parts = Vec::new();
    let mut divider = DividerRef::Boundary;
    let mut block_start = 0usize;
    for (pos, letter) in w.iter().enumerate() {
        if sim.contains(letter) {
            parts.push(Part {
                divider,
                block: block_start..pos,
            });
            divider = DividerRef::First(OccRef {
                letter: letter.clone(),
                index: 1,
                position: pos,
            });
            block_start = pos + 1;
        }
    }
    parts.push(Part {
        divider,
        block: block_start..w.len(),
    });
    Decomposition { level: 0, parts }
}

/// Refines a level-(k-1) decomposition to level k: within each block,
/// letters that are simple in the block and have no occurrence to the left
/// of the block become new dividers.
fn refine(w: &Word, prev: &Decomposition) -> Decomposition {
    let mut parts = Vec::new();
    for part in &prev.parts {
        let block = part.block.clone();
        let mut promote = Vec::new();
        for pos in block.clone() {
            let letter = &w.letters()[pos];
            let in_block = w.letters()[block.clone()]
                .iter()
                .filter(|l| *l == letter)
                .count();
            let before_block = w.letters()[..block.start]
                .iter()
                .filter(|l| *l == letter)
                .count();
            if in_block == 1 && before_block == 0 {
                promote.push(pos);
            }
        }
        let mut divider = part.divider.clone();
        let mut block_start = block.start;
        for pos in promote {
            parts.push(Part {
                divider,
                block: block_start..pos,
            });
            divider = DividerRef::First(OccRef {
                letter: w.letters()[pos].clone(),
                index: 1,
                position: pos,
            });
            block_start = pos + 1;
        }
        parts.push(Part {
            divider,
            block: block_start..block.end,
        });
    }
    Decomposition {
        level: prev.level + 1,
        parts,
    }
}

/// The level-k decomposition of `w`.
pub fn decompose(w: &Word, k: usize) -> Decomposition {
    let mut dec = decompose_0(w);
    for _ in 0..k {
        let next = refine(w, &dec);
        if next.parts == dec.parts {
            // Stationary; only the level number changes from here on.
            return Decomposition {
                level: k,
                parts: dec.parts,
            };
        }
        dec = next;
    }
    dec
}

/// The divider sequence of the level-k decomposition, boundary first.
pub fn dividers(w: &Word, k: usize) -> Vec<DividerRef> {
    decompose(w, k).parts.into_iter().map(|p| p.divider).collect()
}

/// Least k whose decomposition equals the (k+1)-decomposition. Bounded by
/// the word length.
pub fn max_level(w: &Word) -> usize {
    let mut dec = decompose_0(w);
    for k in 0..=w.len() {
        let next = refine(w, &dec);
        if next.parts == dec.parts {
            return k;
        }
        dec = next;
    }
    w.len()
}

/// All decompositions from level 0 to the stationary level, computed once.
pub struct Ladder {
    pub levels: Vec<Decomposition>,
}

impl Ladder {
    pub fn of(w: &Word) -> Ladder {
        let mut levels = vec![decompose_0(w)];
        loop {
            let next = refine(w, levels.last().unwrap());
            if next.parts == levels.last().unwrap().parts {
                return Ladder { levels };
            }
            levels.push(next);
        }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// The level-k decomposition (stationary beyond the ladder top).
    pub fn at(&self, k: usize) -> &Decomposition {
        &self.levels[k.min(self.levels.len() - 1)]
    }
}

/// Right-most level-k divider preceding the `i`th occurrence of `x`;
/// the boundary when no letter divider precedes.
pub fn h(w: &Word, x: &Letter, i: usize, k: usize) -> Result<DividerRef, WordError> {
    let occ = w.nth_occ(x, i)?;
    let dec = decompose(w, k);
    let mut best = DividerRef::Boundary;
    for part in &dec.parts {
        match part.divider.position() {
            Some(p) if p < occ.position => best = part.divider.clone(),
            _ => {}
        }
    }
    Ok(best)
}

fn h_in(dec: &Decomposition, pos: usize) -> DividerRef {
    let mut best = DividerRef::Boundary;
    for part in &dec.parts {
        match part.divider.position() {
            Some(p) if p < pos => best = part.divider.clone(),
            _ => {}
        }
    }
    best
}

/// Depth of `x` in `w` via the h-pointer characterization: the least k with
/// distinct right-most (k-1)-dividers before the first and second
/// occurrences, infinite when they stay together at the stationary level.
pub fn depth(w: &Word, x: &Letter) -> Result<Depth, WordError> {
    if w.occ(x) == 0 {
        return Err(WordError::UnknownLetter(x.clone()));
    }
    if w.occ(x) == 1 {
        return Ok(Depth::Finite(0));
    }
    let p1 = w.nth_occ(x, 1)?.position;
    let p2 = w.nth_occ(x, 2)?.position;
    let ladder = Ladder::of(w);
    for (j, dec) in ladder.levels.iter().enumerate() {
        if h_in(dec, p1) != h_in(dec, p2) {
            return Ok(Depth::Finite(j + 1));
        }
    }
    Ok(Depth::Infinite)
}

/// Depth via block membership: least k such that the two occurrences have
/// different placements in the (k-1)-decomposition. Agrees with [`depth`];
/// kept as a distinct code path for cross-checking.
pub fn depth_by_blocks(w: &Word, x: &Letter) -> Result<Depth, WordError> {
    if w.occ(x) == 0 {
        return Err(WordError::UnknownLetter(x.clone()));
    }
    if w.occ(x) == 1 {
        return Ok(Depth::Finite(0));
    }
    let p1 = w.nth_occ(x, 1)?.position;
    let p2 = w.nth_occ(x, 2)?.position;
    let ladder = Ladder::of(w);
    for (j, dec) in ladder.levels.iter().enumerate() {
        if dec.placement(p1) != dec.placement(p2) {
            return Ok(Depth::Finite(j + 1));
        }
    }
    Ok(Depth::Infinite)
}

/// Both sides share the level-k divider sequence and place each first and
/// second occurrence in blocks of the same index.
pub fn well_balanced(u: &Word, v: &Word, k: usize) -> bool {
    let du = decompose(u, k);
    let dv = decompose(v, k);
    if du.divider_letters() != dv.divider_letters() {
        return false;
    }
    let letters: LetterSet = u.content().union(&v.content()).cloned().collect();
    for x in &letters {
        for i in 1..=2 {
            let in_u = u.nth_occ(x, i).ok();
            let in_v = v.nth_occ(x, i).ok();
            match (in_u, in_v) {
                (Some(a), Some(b)) => {
                    if du.placement(a.position) != dv.placement(b.position) {
                        return false;
                    }
                }
                (None, None) => {}
                _ => return false,
            }
        }
    }
    true
}

fn check_span(w: &Word, span: &Range<usize>) -> Result<(), WordError> {
    if span.start > span.end || span.end > w.len() {
        return Err(WordError::SpanOutOfBounds {
            start: span.start,
            end: span.end,
            len: w.len(),
        });
    }
    Ok(())
}

/// Least depth over the letters of the span that do not occur before it;
/// infinite when there are no such letters or all have infinite depth.
pub fn subword_depth(w: &Word, span: Range<usize>) -> Result<Depth, WordError> {
    check_span(w, &span)?;
    let prefix: LetterSet = w.letters()[..span.start].iter().cloned().collect();
    let mut best = Depth::Infinite;
    for x in w.letters()[span.clone()].iter() {
        if prefix.contains(x) {
            continue;
        }
        let d = depth(w, x)?;
        if d < best {
            best = d;
        }
    }
    Ok(best)
}

/// Infinite subword depth, and no first occurrence of any letter sits
/// between the end of the span and the second occurrence of a letter that
/// is simple in the span and new to it.
pub fn strictly_infinite(w: &Word, span: Range<usize>) -> Result<bool, WordError> {
    check_span(w, &span)?;
    if subword_depth(w, span.clone())? != Depth::Infinite {
        return Ok(false);
    }
    let prefix: LetterSet = w.letters()[..span.start].iter().cloned().collect();
    let sub = w.slice(span.clone());
    for a in sub.simple() {
        if prefix.contains(&a) {
            continue;
        }
        if w.occ(&a) < 2 {
            return Ok(false);
        }
        let second = w.nth_occ(&a, 2)?.position;
        for pos in span.end..second {
            if w.occ_index_at(pos) == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nested canonical form of a word around a letter of finite positive
/// depth k: pivot letters of depths 0..=k whose marked occurrences
/// interleave, and the segments between them.
#[derive(Clone, Debug)]
pub struct FormDecomposition {
    pub level: usize,
    /// Pivots by depth: `pivots[s]` has depth s; `pivots[k]` is the
    /// queried letter.
    pub pivots: Vec<Letter>,
    /// Segments `u_0 ..= u_{2k+1}`, outermost last.
    pub segments: Vec<Word>,
}

/// Marker sequence of the form, left to right: (pivot depth, occurrence).
/// `markers(k)[0] = (k, 1)`, then `(k-1-j, 1), (k-j, 2)` for j = 0..k.
pub fn form_markers(k: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(k, 1)];
    for j in 0..k {
        out.push((k - 1 - j, 1));
        out.push((k - j, 2));
    }
    out
}

impl FormDecomposition {
    /// Segment index between marker `i-1` and marker `i` (`i = 0` is the
    /// leading segment).
    fn segment_slot(k: usize, i: usize) -> usize {
        2 * k + 1 - i
    }

    pub fn reassemble(&self) -> Word {
        let k = self.level;
        let mut letters = Vec::new();
        for (i, (s, _)) in form_markers(k).into_iter().enumerate() {
            letters.extend_from_slice(self.segments[Self::segment_slot(k, i)].letters());
            letters.push(self.pivots[s].clone());
        }
        letters.extend_from_slice(self.segments[0].letters());
        Word::new(letters)
    }

    /// Checks every constraint of the form against `w`: depths of pivots,
    /// marker interleaving, reassembly, and the requirement that segment
    /// `u_{2s+2}` contains no s-divider of `w`.
    pub fn validate(&self, w: &Word) -> bool {
        let k = self.level;
        if self.pivots.len() != k + 1 || self.segments.len() != 2 * k + 2 {
            return false;
        }
        for (s, p) in self.pivots.iter().enumerate() {
            if depth(w, p) != Ok(Depth::Finite(s)) {
                return false;
            }
        }
        if &self.reassemble() != w {
            return false;
        }
        let positions = segment_positions(&self.segments, k);
        if !positions.windows(2).all(|ab| ab[0] < ab[1]) {
            return false;
        }
        // Marked occurrences must really be the 1st/2nd occurrences.
        for (&(s, occ), &pos) in form_markers(k).iter().zip(&positions) {
            match w.nth_occ(&self.pivots[s], occ) {
                Ok(o) if o.position == pos => {}
                _ => return false,
            }
        }
        segment_constraint_ok(w, &positions, k)
    }
}

/// Marker positions implied by the segment lengths: marker i sits after
/// the leading segment and all earlier segment/marker pairs.
fn segment_positions(segments: &[Word], k: usize) -> Vec<usize> {
    let mut positions = Vec::new();
    let mut at = 0usize;
    for i in 0..=2 * k {
        at += segments[FormDecomposition::segment_slot(k, i)].len();
        positions.push(at);
        at += 1;
    }
    positions
}

/// No s-divider of `w` occurs (as a first occurrence) inside `u_{2s+2}`,
/// for s = 0..k-1. Marker positions delimit the segments.
fn segment_constraint_ok(w: &Word, positions: &[usize], k: usize) -> bool {
    segment_constraint_ok_with(&Ladder::of(w), positions, k)
}

/// Extracts a valid form decomposition for `x` in `w`, which must have
/// finite depth k >= 1. Pivots are chosen deterministically: candidates are
/// tried by leftmost first occurrence, backtracking until the segment
/// constraints validate.
pub fn canonical_form(w: &Word, x: &Letter) -> Result<FormDecomposition, DecompError> {
    let d = depth(w, x)?;
    let k = match d {
        Depth::Finite(k) if k >= 1 => k,
        other => {
            return Err(DecompError::DepthNotFinitePositive {
                letter: x.clone(),
                depth: other,
            })
        }
    };
    // Candidate pivots per depth, ordered by first occurrence.
    let mut candidates: Vec<Vec<Letter>> = vec![Vec::new(); k];
    let mut firsts: Vec<(usize, Letter)> = w
        .ini()
        .iter()
        .map(|l| (w.nth_occ(l, 1).unwrap().position, l.clone()))
        .collect();
    firsts.sort();
    for (_, l) in &firsts {
        if let Ok(Depth::Finite(s)) = depth(w, l) {
            if s < k {
                candidates[s].push(l.clone());
            }
        }
    }

    let ladder = Ladder::of(w);
    let mut pivots: Vec<Option<Letter>> = vec![None; k + 1];
    pivots[k] = Some(x.clone());
    if let Some(found) = assign_pivots(w, &ladder, k, &mut pivots, &candidates, k - 1) {
        return Ok(found);
    }
    Err(DecompError::NoFormFound { letter: x.clone() })
}

fn assign_pivots(
    w: &Word,
    ladder: &Ladder,
    k: usize,
    pivots: &mut Vec<Option<Letter>>,
    candidates: &[Vec<Letter>],
    s: usize,
) -> Option<FormDecomposition> {
    for cand in &candidates[s] {
        pivots[s] = Some(cand.clone());
        if partial_order_ok(w, k, pivots, s) {
            let done = if s == 0 {
                build_form(w, ladder, k, pivots)
            } else {
                assign_pivots(w, ladder, k, pivots, candidates, s - 1)
            };
            if done.is_some() {
                return done;
            }
        }
        pivots[s] = None;
    }
    None
}

/// Ordering constraints involving pivot s once pivots s..=k are chosen:
/// the first occurrence of x_s must follow the preceding marker and precede
/// the second occurrence of x_{s+1}.
fn partial_order_ok(w: &Word, k: usize, pivots: &[Option<Letter>], s: usize) -> bool {
    let pos1 = |letter: &Letter| w.nth_occ(letter, 1).map(|o| o.position);
    let pos2 = |letter: &Letter| w.nth_occ(letter, 2).map(|o| o.position);
    let xs = pivots[s].as_ref().unwrap();
    let first = match pos1(xs) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let upper = match pos2(pivots[s + 1].as_ref().unwrap()) {
        Ok(p) => p,
        Err(_) => return false,
    };
    if first >= upper {
        return false;
    }
    let lower = if s == k - 1 {
        pos1(pivots[k].as_ref().unwrap())
    } else {
        pos2(pivots[s + 2].as_ref().unwrap())
    };
    match lower {
        Ok(p) => p < first,
        Err(_) => false,
    }
}

fn build_form(
    w: &Word,
    ladder: &Ladder,
    k: usize,
    pivots: &[Option<Letter>],
) -> Option<FormDecomposition> {
    let pivots: Vec<Letter> = pivots.iter().map(|p| p.clone().unwrap()).collect();
    let mut positions = Vec::new();
    for (s, occ) in form_markers(k) {
        positions.push(w.nth_occ(&pivots[s], occ).ok()?.position);
    }
    if !positions.windows(2).all(|ab| ab[0] < ab[1]) {
        return None;
    }
    if !segment_constraint_ok_with(ladder, &positions, k) {
        return None;
    }
    let mut segments = vec![Word::empty(); 2 * k + 2];
    let mut prev = 0usize;
    for (i, &pos) in positions.iter().enumerate() {
        segments[FormDecomposition::segment_slot(k, i)] = w.slice(prev..pos);
        prev = pos + 1;
    }
    segments[0] = w.slice(prev..w.len());
    let form = FormDecomposition {
        level: k,
        pivots,
        segments,
    };
    debug_assert_eq!(form.reassemble(), *w);
    Some(form)
}

fn segment_constraint_ok_with(ladder: &Ladder, positions: &[usize], k: usize) -> bool {
    for s in 0..k {
        // u_{2s+2} lies between markers 2(k-s)-2 and 2(k-s)-1.
        let hi_marker = 2 * (k - s) - 1;
        let start = positions[hi_marker - 1] + 1;
        let end = positions[hi_marker];
        let dec = ladder.at(s);
        for part in &dec.parts {
            if let Some(p) = part.divider.position() {
                if p >= start && p < end {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn l(s: &str) -> Letter {
        Letter::new(s).unwrap()
    }

    fn divider_names(w: &Word, k: usize) -> Vec<String> {
        dividers(w, k).iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn level_0() {
        let word = w("x s x t");
        let dec = decompose(&word, 0);
        assert_eq!(divider_names(&word, 0), ["λ", "s", "t"]);
        let blocks: Vec<Word> = dec.parts.iter().map(|p| word.slice(p.block.clone())).collect();
        assert_eq!(blocks, [w("x"), w("x"), Word::empty()]);
        assert!(dec.reassembles(&word));
        assert_eq!(dec.render(&word), "[λ](x)[s](x)[t]()");
    }

    #[test]
    fn level_0_no_simple() {
        let word = w("x y x y");
        let dec = decompose(&word, 0);
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(divider_names(&word, 0), ["λ"]);
    }

    #[test]
    fn level_1_promotion() {
        let word = w("x x1 x x0 x1");
        let dec = decompose(&word, 1);
        assert_eq!(divider_names(&word, 1), ["λ", "x1", "x0"]);
        let blocks: Vec<Word> = dec.parts.iter().map(|p| word.slice(p.block.clone())).collect();
        assert_eq!(blocks, [w("x"), w("x"), w("x1")]);
    }

    #[test]
    fn stationary_levels() {
        assert_eq!(divider_names(&w("x y x y"), 5), ["λ"]);
        assert_eq!(divider_names(&Word::empty(), 0), ["λ"]);
        assert_eq!(max_level(&w("x y x y")), 0);
        // x becomes a 1-divider of `x s x t` (depth 1), so the level-1
        // decomposition differs from level 0 and is stationary afterwards.
        assert_eq!(max_level(&w("x s x t")), 1);
        // x has depth 2 in the kappa_1 left side: promoted at level 2.
        assert_eq!(max_level(&w("x x1 x x0 x1")), 2);
        let word = w("x x1 x x0 x1");
        let top = max_level(&word);
        for j in 1..=3 {
            assert_eq!(decompose(&word, top).parts, decompose(&word, top + j).parts);
        }
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&w("x s x t"), &l("x")).unwrap(), Depth::Finite(1));
        assert_eq!(depth(&w("x y x y"), &l("x")).unwrap(), Depth::Infinite);
        assert_eq!(depth(&w("x1 x2 x0 x1"), &l("x1")).unwrap(), Depth::Finite(1));
        assert_eq!(depth(&w("x s x t"), &l("s")).unwrap(), Depth::Finite(0));
        assert_eq!(depth(&w("x x1 x x0 x1"), &l("x")).unwrap(), Depth::Finite(2));
        assert!(matches!(
            depth(&w("x y"), &l("q")),
            Err(WordError::UnknownLetter(_))
        ));
    }

    #[test]
    fn h_examples() {
        let word = w("x s x t");
        assert_eq!(h(&word, &l("x"), 2, 0).unwrap().to_string(), "s");
        assert_eq!(h(&word, &l("x"), 1, 0).unwrap(), DividerRef::Boundary);
        let word = w("x1 x2 x0 x1");
        assert_eq!(h(&word, &l("x1"), 2, 0).unwrap().to_string(), "x0");
        assert!(h(&word, &l("x1"), 3, 0).is_err());
    }

    #[test]
    fn well_balanced_examples() {
        assert!(well_balanced(&w("x y x y"), &w("x x y y"), 0));
        assert!(!well_balanced(&w("x s x t"), &w("x s t x"), 0));
        for word in ["x s x t", "x y x y", "1"] {
            for k in 0..3 {
                assert!(well_balanced(&w(word), &w(word), k));
            }
        }
    }

    #[test]
    fn subword_depth_examples() {
        assert_eq!(subword_depth(&w("x s x t"), 1..2).unwrap(), Depth::Finite(0));
        assert_eq!(subword_depth(&w("x y x y"), 1..2).unwrap(), Depth::Infinite);
        assert_eq!(subword_depth(&w("x y"), 0..0).unwrap(), Depth::Infinite);
        assert!(subword_depth(&w("x y"), 0..5).is_err());
    }

    #[test]
    fn strictly_infinite_examples() {
        assert!(strictly_infinite(&w("x y x y"), 1..2).unwrap());
        assert!(!strictly_infinite(&w("x y x z y z"), 1..2).unwrap());
        assert!(strictly_infinite(&w("x y"), 1..1).unwrap());
    }

    #[test]
    fn canonical_form_kappa_skeleton() {
        let word = w("x x1 x x0 x1");
        let form = canonical_form(&word, &l("x")).unwrap();
        assert_eq!(form.level, 2);
        assert_eq!(
            form.pivots,
            vec![l("x0"), l("x1"), l("x")]
        );
        assert!(form.segments.iter().all(|s| s.is_empty()));
        assert!(form.validate(&word));
    }

    #[test]
    fn canonical_form_simple() {
        let word = w("x s x t");
        let form = canonical_form(&word, &l("x")).unwrap();
        assert_eq!(form.level, 1);
        assert_eq!(form.pivots, vec![l("s"), l("x")]);
        assert_eq!(form.reassemble(), word);
        assert!(form.validate(&word));
    }

    #[test]
    fn canonical_form_infinite_depth_errors() {
        assert!(matches!(
            canonical_form(&w("x y x y"), &l("x")),
            Err(DecompError::DepthNotFinitePositive { .. })
        ));
    }
}
