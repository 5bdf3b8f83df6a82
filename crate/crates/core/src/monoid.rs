//! Finite monoids as multiplication tables: validated construction,
//! presentation closure by string rewriting, evaluation of words, and
//! exhaustive identity satisfaction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identity::Identity;
use crate::words::{Letter, Word};

#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    pub name: String,
    pub elements: Vec<String>,
    pub one: usize,
    /// `table[i][j]` is the index of `e_i * e_j`.
    pub table: Vec<Vec<usize>>,
}

/// Total map from letters to element indices.
pub type Assignment = BTreeMap<Letter, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("table is not square over {0} elements")]
    NotSquare(usize),
    #[error("table entry [{i}][{j}] = {value} out of range")]
    OutOfRange { i: usize, j: usize, value: usize },
    #[error("identity law fails at element `{0}`")]
    IdentityLaw(String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("letter `{0}` has no assigned element")]
    Unassigned(Letter),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("presentation did not close within {bound} elements")]
    DidNotClose { bound: usize },
    #[error("unknown builtin monoid `{0}`")]
    UnknownBuiltin(String),
    #[error("relation side contains non-generator letter `{0}`")]
    NonGenerator(Letter),
}

impl FiniteMonoid {
    /// Validates the table: squareness, index range, identity law, and
    /// exhaustive associativity.
    pub fn from_table(
        name: &str,
        elements: Vec<String>,
        one: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<FiniteMonoid, MonoidError> {
        let n = elements.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(MonoidError::NotSquare(n));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value >= n {
                    return Err(MonoidError::OutOfRange { i, j, value });
                }
            }
        }
        for i in 0..n {
            if table[one][i] != i || table[i][one] != i {
                return Err(MonoidError::IdentityLaw(elements[i].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(MonoidError::NotAssociative(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteMonoid {
            name: name.to_string(),
            elements,
            one,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_index(&self, name: &str) -> Result<usize, MonoidError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| MonoidError::UnknownElement(name.to_string()))
    }

    /// Left-to-right fold of the table; the empty word evaluates to one.
    pub fn eval(&self, w: &Word, asg: &Assignment) -> Result<usize, MonoidError> {
        let mut acc = self.one;
        for letter in w {
            let &e = asg
                .get(letter)
                .ok_or_else(|| MonoidError::Unassigned(letter.clone()))?;
            acc = self.mul(acc, e);
        }
        Ok(acc)
    }

    /// Exhaustive check over all assignments of the identity's letters, in
    /// odometer order over the letter set sorted by name. Returns the first
    /// counterexample, or None when the identity holds.
    pub fn counterexample(&self, id: &Identity) -> Option<Assignment> {
        let letters: Vec<Letter> = id.content().into_iter().collect();
        let n = self.order();
        let mut digits = vec![0usize; letters.len()];
        loop {
            let asg: Assignment = letters
                .iter()
                .cloned()
                .zip(digits.iter().copied())
                .collect();
            let lhs = self.eval(&id.lhs, &asg).expect("total assignment");
            let rhs = self.eval(&id.rhs, &asg).expect("total assignment");
            if lhs != rhs {
                return Some(asg);
            }
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < n {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    pub fn satisfies(&self, id: &Identity) -> bool {
        self.counterexample(id).is_none()
    }

    pub fn render_assignment(&self, asg: &Assignment) -> String {
        asg.iter()
            .map(|(l, &e)| format!("{l}={}", self.elements[e]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (order {})", self.name, self.order())?;
        let width = self.elements.iter().map(|e| e.len()).max().unwrap_or(1) + 1;
        write!(f, "{:width$}|", "*")?;
        for e in &self.elements {
            write!(f, "{e:>width$}")?;
        }
        writeln!(f)?;
        for (i, row) in self.table.iter().enumerate() {
            write!(f, "{:width$}|", self.elements[i])?;
            for &v in row {
                write!(f, "{:>width$}", self.elements[v])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// JSON wire format: `{"elements": [...], "one": "1", "table": [[...]]}`.
#[derive(Serialize, Deserialize)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub one: String,
    pub table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn to_json(&self) -> String {
        let file = MonoidFile {
            elements: self.elements.clone(),
            one: self.elements[self.one].clone(),
            table: self.table.clone(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(name: &str, text: &str) -> Result<FiniteMonoid, MonoidError> {
        let file: MonoidFile =
            serde_json::from_str(text).map_err(|e| MonoidError::UnknownElement(e.to_string()))?;
        let one = file
            .elements
            .iter()
            .position(|e| *e == file.one)
            .ok_or_else(|| MonoidError::UnknownElement(file.one.clone()))?;
        FiniteMonoid::from_table(name, file.elements, one, file.table)
    }
}

/// Shortlex orientation of a relation into a rewrite rule, larger side
/// first. Trivial relations are dropped.
fn orient(lhs: &Word, rhs: &Word) -> Option<(Word, Word)> {
    use std::cmp::Ordering;
    let key = |w: &Word| (w.len(), w.letters().to_vec());
    match key(lhs).cmp(&key(rhs)) {
        Ordering::Greater => Some((lhs.clone(), rhs.clone())),
        Ordering::Less => Some((rhs.clone(), lhs.clone())),
        Ordering::Equal => {
            if lhs == rhs {
                None
            } else {
                Some((lhs.clone(), rhs.clone()))
            }
        }
    }
}

fn rewrite_once(w: &Word, rules: &[(Word, Word)]) -> Option<Word> {
    for start in 0..=w.len() {
        for (from, to) in rules {
            if start + from.len() <= w.len()
                && &w.letters()[start..start + from.len()] == from.letters()
            {
                let mut letters = w.letters()[..start].to_vec();
                letters.extend_from_slice(to.letters());
                letters.extend_from_slice(&w.letters()[start + from.len()..]);
                return Some(Word::new(letters));
            }
        }
    }
    None
}

/// Normal form under leftmost-first rewriting. Terminates because every
/// rule strictly decreases the shortlex order.
fn normalize(w: &Word, rules: &[(Word, Word)]) -> Word {
    let mut cur = w.clone();
    while let Some(next) = rewrite_once(&cur, rules) {
        cur = next;
    }
    cur
}

/// Bounded joinability: are the two words connected by rewriting in both
/// directions, within a word-length and node cap?
fn joinable(a: &Word, b: &Word, rules: &[(Word, Word)], max_len: usize, max_nodes: usize) -> bool {
    use std::collections::{BTreeSet, VecDeque};
    if a == b {
        return true;
    }
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back(a.clone());
    while let Some(w) = queue.pop_front() {
        if seen.len() > max_nodes {
            return false;
        }
        for start in 0..=w.len() {
            for (from, to) in rules {
                for (pat, img) in [(from, to), (to, from)] {
                    if start + pat.len() <= w.len()
                        && &w.letters()[start..start + pat.len()] == pat.letters()
                    {
                        let mut letters = w.letters()[..start].to_vec();
                        letters.extend_from_slice(img.letters());
                        letters.extend_from_slice(&w.letters()[start + pat.len()..]);
                        let next = Word::new(letters);
                        if next == *b {
                            return true;
                        }
                        if next.len() <= max_len && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    false
}

/// Closure enumeration of words over the generators modulo the relations,
/// oriented shortlex-decreasing, with pairwise merging of representatives
/// that are joinable under bounded rewriting. Errors out explicitly when
/// more than `bound` elements appear.
pub fn from_presentation(
    name: &str,
    generators: &[Letter],
    relations: &[Identity],
    bound: usize,
) -> Result<FiniteMonoid, MonoidError> {
    let gen_set: crate::words::LetterSet = generators.iter().cloned().collect();
    for rel in relations {
        for letter in rel.content() {
            if !gen_set.contains(&letter) {
                return Err(MonoidError::NonGenerator(letter));
            }
        }
    }
    let rules: Vec<(Word, Word)> = relations
        .iter()
        .filter_map(|r| orient(&r.lhs, &r.rhs))
        .collect();
    let max_rule_len = rules.iter().map(|(l, _)| l.len()).max().unwrap_or(1);

    let mut reps: Vec<Word> = vec![Word::empty()];
    let mut queue = vec![Word::empty()];
    while let Some(rep) = queue.pop() {
        for g in generators {
            let product = Word::concat(&[&rep, &Word::new(vec![g.clone()])]);
            let nf = normalize(&product, &rules);
            let known = reps.iter().any(|r| {
                r == &nf
                    || joinable(
                        r,
                        &nf,
                        &rules,
                        nf.len().max(r.len()) + max_rule_len + 2,
                        20_000,
                    )
            });
            if !known {
                if reps.len() >= bound {
                    return Err(MonoidError::DidNotClose { bound });
                }
                reps.push(nf.clone());
                queue.insert(0, nf);
            }
        }
    }

    let canon = |w: &Word| -> usize {
        let nf = normalize(w, &rules);
        reps.iter()
            .position(|r| {
                r == &nf
                    || joinable(
                        r,
                        &nf,
                        &rules,
                        nf.len().max(r.len()) + max_rule_len + 2,
                        20_000,
                    )
            })
            .expect("closed under products")
    };
    let n = reps.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = canon(&Word::concat(&[&reps[i], &reps[j]]));
        }
    }
    let elements: Vec<String> = reps
        .iter()
        .map(|r| {
            if r.is_empty() {
                "1".to_string()
            } else {
                r.iter().map(|l| l.name()).collect::<Vec<_>>().concat()
            }
        })
        .collect();
    FiniteMonoid::from_table(name, elements, 0, table)
}

fn letter(s: &str) -> Letter {
    Letter::new(s).unwrap()
}

fn ground(s: &str) -> Word {
    Word::new(s.chars().map(|c| letter(&c.to_string())).collect())
}

/// The relations of the 5-element monoid: a^2 = ab = a, b^2 a = b^2.
/// Oriented left-to-right these do not rewrite b^3, but the closure still
/// identifies it with b^2 through the merge step, via
/// b^3 = (b^2 a)b = b^2(ab) = b^2 a = b^2.
pub fn p21_relations() -> Vec<Identity> {
    vec![
        Identity::new(ground("aa"), ground("a")),
        Identity::new(ground("ab"), ground("a")),
        Identity::new(ground("bba"), ground("bb")),
    ]
}

pub fn b21_relations() -> Vec<Identity> {
    // z is the zero; adjoining it as a generator keeps relations ground.
    vec![
        Identity::new(ground("aba"), ground("a")),
        Identity::new(ground("bab"), ground("b")),
        Identity::new(ground("aa"), ground("z")),
        Identity::new(ground("bb"), ground("z")),
        Identity::new(ground("az"), ground("z")),
        Identity::new(ground("za"), ground("z")),
        Identity::new(ground("bz"), ground("z")),
        Identity::new(ground("zb"), ground("z")),
    ]
}

fn reorder(m: FiniteMonoid, order: &[&str]) -> FiniteMonoid {
    let perm: Vec<usize> = order
        .iter()
        .map(|name| m.element_index(name).expect("known element"))
        .collect();
    let inv: BTreeMap<usize, usize> = perm.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let n = m.order();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = inv[&m.table[perm[i]][perm[j]]];
        }
    }
    FiniteMonoid {
        name: m.name,
        elements: order.iter().map(|s| s.to_string()).collect(),
        one: inv[&m.one],
        table,
    }
}

fn rename(mut m: FiniteMonoid, from: &str, to: &str) -> FiniteMonoid {
    for e in &mut m.elements {
        if e == from {
            *e = to.to_string();
        }
    }
    m
}

/// Builtin monoids: `p21`, `b21`, `lz2_1`.
pub fn builtin(name: &str) -> Result<FiniteMonoid, MonoidError> {
    match name {
        "p21" => {
            let m = from_presentation("p21", &[letter("a"), letter("b")], &p21_relations(), 5)?;
            Ok(reorder(m, &["1", "a", "b", "ba", "bb"]))
        }
        "b21" => {
            let m = from_presentation(
                "b21",
                &[letter("a"), letter("b"), letter("z")],
                &b21_relations(),
                6,
            )?;
            let m = rename(m, "z", "0");
            Ok(reorder(m, &["1", "a", "b", "ab", "ba", "0"]))
        }
        "lz2_1" => {
            // Two left zeros with an adjoined identity.
            let elements = vec!["1".to_string(), "e".to_string(), "f".to_string()];
            let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
            FiniteMonoid::from_table("lz2_1", elements, 0, table)
        }
        other => Err(MonoidError::UnknownBuiltin(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn trivial_monoid() {
        let m = FiniteMonoid::from_table("t", vec!["1".into()], 0, vec![vec![0]]).unwrap();
        assert_eq!(m.order(), 1);
    }

    #[test]
    fn lz2_1_is_valid_and_models_lrb() {
        let m = builtin("lz2_1").unwrap();
        assert_eq!(m.order(), 3);
        assert!(m.satisfies(&families::lrb_ax()));
    }

    #[test]
    fn bad_tables_are_rejected() {
        // e*(f*g) != (e*f)*g
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        let err = FiniteMonoid::from_table(
            "bad",
            vec!["1".into(), "e".into(), "f".into()],
            0,
            table,
        )
        .unwrap_err();
        assert!(matches!(err, MonoidError::NotAssociative(..)));

        let err =
            FiniteMonoid::from_table("bad", vec!["1".into(), "e".into()], 0, vec![vec![0, 1]])
                .unwrap_err();
        assert!(matches!(err, MonoidError::NotSquare(2)));
    }

    #[test]
    fn p21_closure() {
        let m = builtin("p21").unwrap();
        assert_eq!(m.elements, ["1", "a", "b", "ba", "bb"]);
        // Spot products against hand computation.
        let idx = |s: &str| m.element_index(s).unwrap();
        assert_eq!(m.mul(idx("a"), idx("b")), idx("a"));
        assert_eq!(m.mul(idx("b"), idx("a")), idx("ba"));
        assert_eq!(m.mul(idx("b"), idx("b")), idx("bb"));
        assert_eq!(m.mul(idx("bb"), idx("a")), idx("bb"));
        assert_eq!(m.mul(idx("bb"), idx("b")), idx("bb"));
        assert_eq!(m.mul(idx("ba"), idx("b")), idx("ba"));
    }

    #[test]
    fn p21_closes_at_bound_five() {
        // The left-to-right rules leave b^3 irreducible; the merge step
        // identifies it with b^2, so the closure stays at five elements.
        let m = from_presentation(
            "p21-printed",
            &[letter("a"), letter("b")],
            &p21_relations(),
            5,
        )
        .unwrap();
        assert_eq!(m.order(), 5);
    }

    #[test]
    fn undersized_bound_is_an_explicit_error() {
        let err = from_presentation(
            "p21-small",
            &[letter("a"), letter("b")],
            &p21_relations(),
            4,
        )
        .unwrap_err();
        assert!(matches!(err, MonoidError::DidNotClose { bound: 4 }));
    }

    #[test]
    fn b21_closure() {
        let m = builtin("b21").unwrap();
        assert_eq!(m.elements, ["1", "a", "b", "ab", "ba", "0"]);
        let idx = |s: &str| m.element_index(s).unwrap();
        assert_eq!(m.mul(idx("a"), idx("b")), idx("ab"));
        assert_eq!(m.mul(idx("ab"), idx("a")), idx("a"));
        assert_eq!(m.mul(idx("a"), idx("a")), idx("0"));
        assert_eq!(m.mul(idx("ab"), idx("ba")), idx("0"));
        assert_eq!(m.mul(idx("ba"), idx("b")), idx("b"));
    }

    #[test]
    fn single_generator_idempotent() {
        let m = from_presentation(
            "g",
            &[letter("g")],
            &[Identity::new(ground("gg"), ground("g"))],
            2,
        )
        .unwrap();
        assert_eq!(m.elements, ["1", "g"]);
    }

    #[test]
    fn eval_examples() {
        let b21 = builtin("b21").unwrap();
        let asg: Assignment = [
            (letter("a"), b21.element_index("a").unwrap()),
            (letter("b"), b21.element_index("b").unwrap()),
        ]
        .into_iter()
        .collect();
        let abab = Word::parse("a b a b").unwrap();
        assert_eq!(b21.eval(&abab, &asg).unwrap(), b21.element_index("ab").unwrap());
        assert_eq!(
            b21.eval(&Word::empty(), &Assignment::new()).unwrap(),
            b21.one
        );

        let p21 = builtin("p21").unwrap();
        let asg: Assignment = [
            (letter("a"), p21.element_index("a").unwrap()),
            (letter("b"), p21.element_index("b").unwrap()),
        ]
        .into_iter()
        .collect();
        let ab = Word::parse("a b").unwrap();
        assert_eq!(p21.eval(&ab, &asg).unwrap(), p21.element_index("a").unwrap());
        assert!(matches!(
            p21.eval(&Word::parse("q").unwrap(), &asg),
            Err(MonoidError::Unassigned(_))
        ));
    }

    #[test]
    fn satisfies_examples() {
        let p21 = builtin("p21").unwrap();
        assert!(p21.satisfies(&families::i11()));
        let comm = Identity::parse("x y = y x").unwrap();
        let cex = p21.counterexample(&comm).unwrap();
        assert_eq!(p21.render_assignment(&cex), "x=a y=b");

        let b21 = builtin("b21").unwrap();
        assert!(b21.satisfies(&Identity::parse("x x = x x x").unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let m = builtin("p21").unwrap();
        let back = FiniteMonoid::from_json("p21", &m.to_json()).unwrap();
        assert_eq!(back.elements, m.elements);
        assert_eq!(back.table, m.table);
    }
}
