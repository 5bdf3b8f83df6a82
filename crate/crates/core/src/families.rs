//! Generators for the named identity and word families, parameterized
//! exactly as displayed, over canonical letter names (`x`, `y`, `t`, `s`,
//! `x0..`, `y0..`, `zoo`). Infinite schemas are exposed as finite
//! truncations.

use thiserror::Error;

use crate::identity::Identity;
use crate::words::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("family `{name}` takes {expect} parameter(s), got {got}")]
    Arity {
        name: String,
        expect: &'static str,
        got: usize,
    },
}

fn letter(name: &str) -> Letter {
    Letter::new(name).expect("canonical letter name")
}

fn xi(i: usize) -> Letter {
    letter(&format!("x{i}"))
}

fn yi(i: usize) -> Letter {
    letter(&format!("y{i}"))
}

fn word(letters: Vec<Letter>) -> Word {
    Word::new(letters)
}

/// `b(s, q)` = x_{s-1} x_s x_{s-2} x_{s-1} ... x_{q-1} x_q for 1 <= q <= s,
/// with `b(0, _) = 1` and `b(s, s+1) = 1` for convenience.
pub fn b(s: usize, q: usize) -> Result<Word, FamilyError> {
    if s == 0 || q == s + 1 {
        return Ok(Word::empty());
    }
    if q == 0 || q > s + 1 {
        return Err(FamilyError::Param(format!("b({s}, {q}) needs 1 <= q <= s+1")));
    }
    let mut letters = Vec::new();
    for j in (q..=s).rev() {
        letters.push(xi(j - 1));
        letters.push(xi(j));
    }
    Ok(word(letters))
}

/// `b(k, 1)`, the full descending chain.
pub fn b_full(k: usize) -> Word {
    b(k, 1).expect("k >= 0")
}

fn require(cond: bool, msg: &str) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Param(msg.to_string()))
    }
}

/// (1.1): x s x t = x s x t x. The ambient axiom of all families here.
pub fn i11() -> Identity {
    Identity::named(
        "i11",
        Word::parse("x s x t").unwrap(),
        Word::parse("x s x t x").unwrap(),
    )
}

/// (3.2): x y x y = x x y y.
pub fn xyxy() -> Identity {
    Identity::named(
        "xyxy",
        Word::parse("x y x y").unwrap(),
        Word::parse("x x y y").unwrap(),
    )
}

/// (4.2): x y t x y = x y t y x.
pub fn xytxy() -> Identity {
    Identity::named(
        "xytxy",
        Word::parse("x y t x y").unwrap(),
        Word::parse("x y t y x").unwrap(),
    )
}

/// x t y x y = x t y y x.
pub fn xtyxy() -> Identity {
    Identity::named(
        "xtyxy",
        Word::parse("x t y x y").unwrap(),
        Word::parse("x t y y x").unwrap(),
    )
}

/// x z y t x y zoo zoo z = x z y t y x zoo zoo z.
pub fn xzyt() -> Identity {
    Identity::named(
        "xzyt",
        Word::parse("x z y t x y zoo zoo z").unwrap(),
        Word::parse("x z y t y x zoo zoo z").unwrap(),
    )
}

/// (5.1): x s y t x y = x s y t y x.
pub fn xsytxy() -> Identity {
    Identity::named(
        "xsytxy",
        Word::parse("x s y t x y").unwrap(),
        Word::parse("x s y t y x").unwrap(),
    )
}

/// The eta-family falsification target: x x1 y x y x0 x1 = x x1 y y x x0 x1.
pub fn eta1t() -> Identity {
    Identity::named(
        "eta1t",
        Word::parse("x x1 y x y x0 x1").unwrap(),
        Word::parse("x x1 y y x x0 x1").unwrap(),
    )
}

/// x y = x y x, the left-regular-band axiom.
pub fn lrb_ax() -> Identity {
    Identity::named(
        "lrb",
        Word::parse("x y").unwrap(),
        Word::parse("x y x").unwrap(),
    )
}

/// alpha_k: x_k y_k x_{k-1} x_k y_k b_{k-1} = y_k x_k x_{k-1} x_k y_k b_{k-1}.
pub fn alpha(k: usize) -> Result<Identity, FamilyError> {
    require(k >= 1, "alpha needs k >= 1")?;
    let tail = {
        let mut t = vec![xi(k - 1), xi(k), yi(k)];
        t.extend_from_slice(b_full(k - 1).letters());
        t
    };
    let mut lhs = vec![xi(k), yi(k)];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![yi(k), xi(k)];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("alpha{k}"), word(lhs), word(rhs)))
}

/// beta_k: x x_k x b_k = x_k x x b_k.
pub fn beta(k: usize) -> Result<Identity, FamilyError> {
    require(k >= 1, "beta needs k >= 1")?;
    let x = letter("x");
    let bk = b_full(k);
    let mut lhs = vec![x.clone(), xi(k), x.clone()];
    lhs.extend_from_slice(bk.letters());
    let mut rhs = vec![xi(k), x.clone(), x];
    rhs.extend_from_slice(bk.letters());
    Ok(Identity::named(&format!("beta{k}"), word(lhs), word(rhs)))
}

/// gamma_k: y1 y0 x_k y1 b_k = y1 y0 y1 x_k b_k.
pub fn gamma(k: usize) -> Result<Identity, FamilyError> {
    require(k >= 1, "gamma needs k >= 1")?;
    let bk = b_full(k);
    let mut lhs = vec![yi(1), yi(0), xi(k), yi(1)];
    lhs.extend_from_slice(bk.letters());
    let mut rhs = vec![yi(1), yi(0), yi(1), xi(k)];
    rhs.extend_from_slice(bk.letters());
    Ok(Identity::named(&format!("gamma{k}"), word(lhs), word(rhs)))
}

/// delta_k^m: y_{m+1} y_m x_k y_{m+1} b_{k,m} y_m b_{m-1}
///          = y_{m+1} y_m y_{m+1} x_k b_{k,m} y_m b_{m-1}.
pub fn delta(k: usize, m: usize) -> Result<Identity, FamilyError> {
    require(k >= 1 && (1..=k).contains(&m), "delta needs 1 <= m <= k")?;
    let tail = {
        let mut t = Vec::new();
        t.extend_from_slice(b(k, m)?.letters());
        t.push(yi(m));
        t.extend_from_slice(b_full(m - 1).letters());
        t
    };
    let mut lhs = vec![yi(m + 1), yi(m), xi(k), yi(m + 1)];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![yi(m + 1), yi(m), yi(m + 1), xi(k)];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("delta{k}_{m}"), word(lhs), word(rhs)))
}

/// kappa_k: x x_k x b_k = x x x_k b_k.
pub fn kappa(k: usize) -> Result<Identity, FamilyError> {
    require(k >= 1, "kappa needs k >= 1")?;
    let x = letter("x");
    let bk = b_full(k);
    let mut lhs = vec![x.clone(), xi(k), x.clone()];
    lhs.extend_from_slice(bk.letters());
    let mut rhs = vec![x.clone(), x, xi(k)];
    rhs.extend_from_slice(bk.letters());
    Ok(Identity::named(&format!("kappa{k}"), word(lhs), word(rhs)))
}

/// epsilon_j (j >= 0, displayed as epsilon_{k-1} with k = j+1):
/// y_k x_{k-1} x y_k x b_{k-1} = y_k x_{k-1} y_k x x b_{k-1}.
pub fn epsilon(j: usize) -> Result<Identity, FamilyError> {
    let k = j + 1;
    let x = letter("x");
    let tail = b_full(k - 1);
    let mut lhs = vec![yi(k), xi(k - 1), x.clone(), yi(k), x.clone()];
    lhs.extend_from_slice(tail.letters());
    let mut rhs = vec![yi(k), xi(k - 1), yi(k), x.clone(), x];
    rhs.extend_from_slice(tail.letters());
    Ok(Identity::named(&format!("epsilon{j}"), word(lhs), word(rhs)))
}

/// zeta_j (j >= 0): x y0 y x_j x y b_j = x y0 y x_j y x b_j.
pub fn zeta(j: usize) -> Result<Identity, FamilyError> {
    let x = letter("x");
    let y = letter("y");
    let tail = b_full(j);
    let mut lhs = vec![x.clone(), yi(0), y.clone(), xi(j), x.clone(), y.clone()];
    lhs.extend_from_slice(tail.letters());
    let mut rhs = vec![x.clone(), yi(0), y.clone(), xi(j), y, x];
    rhs.extend_from_slice(tail.letters());
    Ok(Identity::named(&format!("zeta{j}"), word(lhs), word(rhs)))
}

/// lambda_k^m: x y_m y x_k x y b_{k,m} y_m b_{m-1}
///           = x y_m y x_k y x b_{k,m} y_m b_{m-1}.
pub fn lambda(k: usize, m: usize) -> Result<Identity, FamilyError> {
    require(k >= 1 && (1..=k).contains(&m), "lambda needs 1 <= m <= k")?;
    let x = letter("x");
    let y = letter("y");
    let tail = {
        let mut t = Vec::new();
        t.extend_from_slice(b(k, m)?.letters());
        t.push(yi(m));
        t.extend_from_slice(b_full(m - 1).letters());
        t
    };
    let mut lhs = vec![x.clone(), yi(m), y.clone(), xi(k), x.clone(), y.clone()];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![x.clone(), yi(m), y.clone(), xi(k), y, x];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("lambda{k}_{m}"), word(lhs), word(rhs)))
}

/// eta_j (j >= 0): x y1 y y0 x y x_j y1 b_j = x y1 y y0 y x x_j y1 b_j.
pub fn eta(j: usize) -> Result<Identity, FamilyError> {
    let x = letter("x");
    let y = letter("y");
    let tail = {
        let mut t = vec![xi(j), yi(1)];
        t.extend_from_slice(b_full(j).letters());
        t
    };
    let mut lhs = vec![x.clone(), yi(1), y.clone(), yi(0), x.clone(), y.clone()];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![x.clone(), yi(1), y.clone(), yi(0), y, x];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("eta{j}"), word(lhs), word(rhs)))
}

/// mu_k^m: x y_{m+1} y y_m x y x_k y_{m+1} b_{k,m} y_m b_{m-1}
///       = x y_{m+1} y y_m y x x_k y_{m+1} b_{k,m} y_m b_{m-1}.
pub fn mu(k: usize, m: usize) -> Result<Identity, FamilyError> {
    require(k >= 1 && (1..=k).contains(&m), "mu needs 1 <= m <= k")?;
    let x = letter("x");
    let y = letter("y");
    let tail = {
        let mut t = vec![xi(k), yi(m + 1)];
        t.extend_from_slice(b(k, m)?.letters());
        t.push(yi(m));
        t.extend_from_slice(b_full(m - 1).letters());
        t
    };
    let mut lhs = vec![
        x.clone(),
        yi(m + 1),
        y.clone(),
        yi(m),
        x.clone(),
        y.clone(),
    ];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![x.clone(), yi(m + 1), y.clone(), yi(m), y, x];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("mu{k}_{m}"), word(lhs), word(rhs)))
}

/// nu_j (j >= 0): x x_j y z x y zoo zoo z b_j = x x_j y z y x zoo zoo z b_j.
pub fn nu(j: usize) -> Result<Identity, FamilyError> {
    let x = letter("x");
    let y = letter("y");
    let z = letter("z");
    let zoo = letter("zoo");
    let tail = {
        let mut t = vec![zoo.clone(), zoo, z.clone()];
        t.extend_from_slice(b_full(j).letters());
        t
    };
    let mut lhs = vec![x.clone(), xi(j), y.clone(), z.clone(), x.clone(), y.clone()];
    lhs.extend_from_slice(&tail);
    let mut rhs = vec![x.clone(), xi(j), y.clone(), z, y, x];
    rhs.extend_from_slice(&tail);
    Ok(Identity::named(&format!("nu{j}"), word(lhs), word(rhs)))
}

/// (3.3) truncation: x1 x1 x2 x2 ... xn xn = (x1 x2 ... xn)^2.
pub fn sq_merge(n: usize) -> Result<Identity, FamilyError> {
    require(n >= 2, "sqmerge needs n >= 2")?;
    let mut lhs = Vec::new();
    for i in 1..=n {
        lhs.push(xi(i));
        lhs.push(xi(i));
    }
    let mut rhs = Vec::new();
    for _ in 0..2 {
        for i in 1..=n {
            rhs.push(xi(i));
        }
    }
    Ok(Identity::named(&format!("sqmerge{n}"), word(lhs), word(rhs)))
}

/// A permutation of {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(one_line: Vec<usize>) -> Result<Perm, FamilyError> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(FamilyError::Param(format!(
                    "not a permutation of 1..={n}: {one_line:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm(one_line))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((1..=n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// All permutations of {1..n} in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm(cur.clone()));
            if !next_permutation(&mut cur) {
                return out;
            }
        }
    }

    pub fn one_line(&self) -> String {
        self.0
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn ti(i: usize) -> Letter {
    letter(&format!("t{i}"))
}

fn zi(i: usize) -> Letter {
    letter(&format!("z{i}"))
}

fn si(i: usize) -> Letter {
    letter(&format!("s{i}"))
}

fn w_word(n: usize, pi: &Perm, tau: &Perm, middle: [&str; 2]) -> Word {
    let x = letter("x");
    let y = letter("y");
    let t = letter("t");
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(xi(i));
        out.push(ti(i));
    }
    out.push(x);
    for i in 1..=2 * n {
        out.push(zi(i));
    }
    out.push(y);
    for i in n + 1..=2 * n {
        out.push(ti(i));
        out.push(xi(i));
    }
    out.push(t);
    out.push(letter(middle[0]));
    out.push(letter(middle[1]));
    for i in 1..=2 * n {
        out.push(xi(pi.apply(i)));
        out.push(zi(tau.apply(i)));
    }
    word(out)
}

/// w_n[pi, tau] = w'_n[pi, tau]: the two sides differ by one adjacent
/// transposition of the second occurrences of x and y.
pub fn w_pair(n: usize, pi: &Perm, tau: &Perm) -> Result<Identity, FamilyError> {
    require(n >= 1, "w_pair needs n >= 1")?;
    require(
        pi.degree() == 2 * n && tau.degree() == 2 * n,
        "w_pair needs permutations of degree 2n",
    )?;
    Ok(Identity::named(
        &format!("w{n}[{}|{}]", pi.one_line(), tau.one_line()),
        w_word(n, pi, tau, ["x", "y"]),
        w_word(n, pi, tau, ["y", "x"]),
    ))
}

fn z_word(n: usize, pi: &Perm, tau: &Perm, middle: [&str; 2]) -> Word {
    let x = letter("x");
    let y = letter("y");
    let t = letter("t");
    let mut out = Vec::new();
    for i in 1..=2 * n {
        out.push(xi(i));
        out.push(ti(i));
    }
    out.push(x);
    for i in 1..=n {
        out.push(zi(i));
        out.push(si(i));
    }
    out.push(y);
    for i in 1..=n {
        out.push(zi(n + i));
    }
    out.push(letter(middle[0]));
    out.push(letter(middle[1]));
    for i in 1..=2 * n {
        out.push(xi(pi.apply(i)));
        out.push(zi(tau.apply(i)));
    }
    out.push(t);
    for i in 1..=n {
        out.push(si(i));
    }
    word(out)
}

/// z_n[pi, tau] = z'_n[pi, tau].
pub fn z_pair(n: usize, pi: &Perm, tau: &Perm) -> Result<Identity, FamilyError> {
    require(n >= 1, "z_pair needs n >= 1")?;
    require(
        pi.degree() == 2 * n && tau.degree() == 2 * n,
        "z_pair needs permutations of degree 2n",
    )?;
    Ok(Identity::named(
        &format!("z{n}[{}|{}]", pi.one_line(), tau.one_line()),
        z_word(n, pi, tau, ["x", "y"]),
        z_word(n, pi, tau, ["y", "x"]),
    ))
}

/// z_n[theta]: the two-limited shape a word equivalent to z_n must take;
/// `a` is the middle (`xy` or `yx`) and theta permutes the trailing s_i.
pub fn z_theta(n: usize, theta: &Perm, a: [&str; 2]) -> Result<Word, FamilyError> {
    require(n >= 1, "z_theta needs n >= 1")?;
    require(theta.degree() == n, "z_theta needs a permutation of degree n")?;
    let x = letter("x");
    let y = letter("y");
    let t = letter("t");
    let mut out = Vec::new();
    for i in 1..=2 * n {
        out.push(xi(i));
        out.push(ti(i));
    }
    out.push(x);
    for i in 1..=n {
        out.push(zi(i));
        out.push(si(i));
    }
    out.push(y);
    for i in 1..=n {
        out.push(zi(n + i));
    }
    out.push(letter(a[0]));
    out.push(letter(a[1]));
    for i in 1..=2 * n {
        out.push(xi(i));
        out.push(zi(i));
    }
    out.push(t);
    for i in 1..=n {
        out.push(si(theta.apply(i)));
    }
    Ok(word(out))
}

/// Omega_1 truncated at n_max: (1.1), kappa_1, and all w-pairs with n <=
/// n_max. Omega_2 swaps kappa_1 for eta_1 and w for z.
pub fn omega(which: u8, n_max: usize) -> Result<Vec<Identity>, FamilyError> {
    let mut out = vec![i11()];
    match which {
        1 => out.push(kappa(1)?),
        2 => out.push(eta(1)?),
        other => return Err(FamilyError::Param(format!("omega variant {other}"))),
    }
    for n in 1..=n_max {
        for pi in Perm::all(2 * n) {
            for tau in Perm::all(2 * n) {
                out.push(match which {
                    1 => w_pair(n, &pi, &tau)?,
                    _ => z_pair(n, &pi, &tau)?,
                });
            }
        }
    }
    Ok(out)
}

/// The Phi pool truncated at k_max: (1.1), (3.2), gamma_k, delta_k^m,
/// epsilon_{k-1} for k <= k_max, 1 <= m <= k.
pub fn phi(k_max: usize) -> Vec<Identity> {
    let mut out = vec![i11(), xyxy()];
    for k in 1..=k_max {
        out.push(gamma(k).unwrap());
        for m in 1..=k {
            out.push(delta(k, m).unwrap());
        }
        out.push(epsilon(k - 1).unwrap());
    }
    out
}

/// The Psi_1 pool truncated at k_max: (1.1), the xtyxy and xzyt swaps, and
/// zeta/lambda/eta/mu/nu for k <= k_max.
pub fn psi1(k_max: usize) -> Vec<Identity> {
    let mut out = vec![i11(), xtyxy(), xzyt()];
    for k in 1..=k_max {
        out.push(zeta(k - 1).unwrap());
        for m in 1..=k {
            out.push(lambda(k, m).unwrap());
            out.push(mu(k, m).unwrap());
        }
        out.push(eta(k - 1).unwrap());
        out.push(nu(k - 1).unwrap());
    }
    out
}

/// The Psi_2 pool truncated at k_max: Psi_1 members with nu restricted to
/// nu_0 and nu_1.
pub fn psi2(k_max: usize) -> Vec<Identity> {
    let mut out = vec![i11(), xtyxy(), xzyt()];
    for k in 1..=k_max {
        out.push(zeta(k - 1).unwrap());
        for m in 1..=k {
            out.push(lambda(k, m).unwrap());
            out.push(mu(k, m).unwrap());
        }
        out.push(eta(k - 1).unwrap());
    }
    out.push(nu(0).unwrap());
    if k_max >= 1 {
        out.push(nu(1).unwrap());
    }
    out
}

/// Family catalog entry: name, parameter arity, synopsis.
pub fn list() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("b", "s q", "auxiliary word x_{s-1} x_s ... x_{q-1} x_q"),
        ("alpha", "k", "x_k y_k x_{k-1} x_k y_k b_{k-1} = ..."),
        ("beta", "k", "x x_k x b_k = x_k x x b_k"),
        ("gamma", "k", "y1 y0 x_k y1 b_k = y1 y0 y1 x_k b_k"),
        ("delta", "k m", "y_{m+1} y_m x_k y_{m+1} b_{k,m} y_m b_{m-1} = ..."),
        ("epsilon", "j", "y_k x_{k-1} x y_k x b_{k-1} = ... (k = j+1)"),
        ("kappa", "k", "x x_k x b_k = x x x_k b_k"),
        ("zeta", "j", "x y0 y x_j x y b_j = x y0 y x_j y x b_j"),
        ("lambda", "k m", "x y_m y x_k x y b_{k,m} y_m b_{m-1} = ..."),
        ("eta", "j", "x y1 y y0 x y x_j y1 b_j = ..."),
        ("mu", "k m", "x y_{m+1} y y_m x y x_k y_{m+1} ... = ..."),
        ("nu", "j", "x x_j y z x y zoo zoo z b_j = ..."),
        ("sqmerge", "n", "x1 x1 ... xn xn = (x1 ... xn)^2"),
        ("w", "n", "w_n[id,id] pair (use omega1 for all permutations)"),
        ("z", "n", "z_n[id,id] pair (use omega2 for all permutations)"),
        ("i11", "", "x s x t = x s x t x"),
        ("xyxy", "", "x y x y = x x y y"),
        ("xytxy", "", "x y t x y = x y t y x"),
        ("xtyxy", "", "x t y x y = x t y y x"),
        ("xzyt", "", "x z y t x y zoo zoo z = ..."),
        ("xsytxy", "", "x s y t x y = x s y t y x"),
        ("eta1t", "", "x x1 y x y x0 x1 = x x1 y y x x0 x1"),
        ("lrb", "", "x y = x y x"),
    ]
}

/// Builds a family member from a CLI-style name plus numeric parameters.
pub fn family(name: &str, params: &[usize]) -> Result<Identity, FamilyError> {
    let arity = |expect: &'static str, n: usize| -> Result<(), FamilyError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(FamilyError::Arity {
                name: name.to_string(),
                expect,
                got: params.len(),
            })
        }
    };
    match name {
        "alpha" => {
            arity("k", 1)?;
            alpha(params[0])
        }
        "beta" => {
            arity("k", 1)?;
            beta(params[0])
        }
        "gamma" => {
            arity("k", 1)?;
            gamma(params[0])
        }
        "delta" => {
            arity("k m", 2)?;
            delta(params[0], params[1])
        }
        "epsilon" => {
            arity("j", 1)?;
            epsilon(params[0])
        }
        "kappa" => {
            arity("k", 1)?;
            kappa(params[0])
        }
        "zeta" => {
            arity("j", 1)?;
            zeta(params[0])
        }
        "lambda" => {
            arity("k m", 2)?;
            lambda(params[0], params[1])
        }
        "eta" => {
            arity("j", 1)?;
            eta(params[0])
        }
        "mu" => {
            arity("k m", 2)?;
            mu(params[0], params[1])
        }
        "nu" => {
            arity("j", 1)?;
            nu(params[0])
        }
        "sqmerge" => {
            arity("n", 1)?;
            sq_merge(params[0])
        }
        "w" => {
            arity("n", 1)?;
            let n = params[0];
            w_pair(n, &Perm::identity(2 * n), &Perm::identity(2 * n))
        }
        "z" => {
            arity("n", 1)?;
            let n = params[0];
            z_pair(n, &Perm::identity(2 * n), &Perm::identity(2 * n))
        }
        "i11" => {
            arity("", 0)?;
            Ok(i11())
        }
        "xyxy" => {
            arity("", 0)?;
            Ok(xyxy())
        }
        "xytxy" => {
            arity("", 0)?;
            Ok(xytxy())
        }
        "xtyxy" => {
            arity("", 0)?;
            Ok(xtyxy())
        }
        "xzyt" => {
            arity("", 0)?;
            Ok(xzyt())
        }
        "xsytxy" => {
            arity("", 0)?;
            Ok(xsytxy())
       }
        "eta1t" => {
            arity("", 0)?;
            Ok(eta1t())
        }
        "lrb" => {
            arity("", 0)?;
            Ok(lrb_ax())
        }
        other => Err(FamilyError::Unknown(other.to_string())),
    }
}

/// Parses an axiom-set spec like `i11,kappa1,delta:2:1,omega1:1`. Single
/// parameters may be glued to the name (`kappa1`); multi-parameter
/// families use colons. `omega1:N` / `omega2:N` / `phi:N` expand to pools.
pub fn parse_axiom_set(spec: &str) -> Result<Vec<Identity>, FamilyError> {
    let mut out: Vec<Identity> = Vec::new();
    for raw in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = raw.split(':').collect();
        let expanded: Vec<Identity> = if parts.len() > 1 {
            let name = parts[0];
            let params: Vec<usize> = parts[1..]
                .iter()
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| FamilyError::Param(format!("bad parameter `{p}` in `{raw}`")))
                })
                .collect::<Result<_, _>>()?;
            match name {
                "omega1" if params.len() == 1 => omega(1, params[0])?,
                "omega2" if params.len() == 1 => omega(2, params[0])?,
                "phi" if params.len() == 1 => phi(params[0]),
                "psi1" if params.len() == 1 => psi1(params[0]),
                "psi2" if params.len() == 1 => psi2(params[0]),
                _ => vec![family(name, &params)?],
            }
        } else {
            match split_glued(raw) {
                Some((name, params)) => vec![family(&name, &params)?],
                None => vec![family(raw, &[])?],
            }
        };
        for id in expanded {
            if !out.iter().any(|e| e.label() == id.label()) {
                out.push(id);
            }
        }
    }
    if out.is_empty() {
        return Err(FamilyError::Param("empty axiom set".to_string()));
    }
    Ok(out)
}

/// `kappa1` -> ("kappa", [1]); fixed names pass through unchanged.
fn split_glued(raw: &str) -> Option<(String, Vec<usize>)> {
    const FIXED: [&str; 8] = [
        "i11", "xyxy", "xytxy", "xtyxy", "xzyt", "xsytxy", "eta1t", "lrb",
    ];
    if FIXED.contains(&raw) {
        return None;
    }
    let split = raw.find(|c: char| c.is_ascii_digit())?;
    let (name, digits) = raw.split_at(split);
    let param: usize = digits.parse().ok()?;
    Some((name.to_string(), vec![param]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_balanced;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn b_examples() {
        assert_eq!(b(2, 1).unwrap(), w("x1 x2 x0 x1"));
        assert_eq!(b(1, 1).unwrap(), w("x0 x1"));
        assert_eq!(b(0, 1).unwrap(), Word::empty());
        assert_eq!(b(3, 4).unwrap(), Word::empty());
        assert!(b(2, 0).is_err());
    }

    #[test]
    fn kappa_matches_display() {
        let k1 = kappa(1).unwrap();
        assert_eq!(k1.lhs, w("x x1 x x0 x1"));
        assert_eq!(k1.rhs, w("x x x1 x0 x1"));
    }

    #[test]
    fn epsilon_matches_display() {
        let e0 = epsilon(0).unwrap();
        assert_eq!(e0.lhs, w("y1 x0 x y1 x"));
        assert_eq!(e0.rhs, w("y1 x0 y1 x x"));
    }

    #[test]
    fn eta_matches_display() {
        let e1 = eta(1).unwrap();
        assert_eq!(e1.lhs, w("x y1 y y0 x y x1 y1 x0 x1"));
        assert_eq!(e1.rhs, w("x y1 y y0 y x x1 y1 x0 x1"));
    }

    #[test]
    fn w_pair_matches_display() {
        let id = w_pair(1, &Perm::identity(2), &Perm::identity(2)).unwrap();
        assert_eq!(id.lhs, w("x1 t1 x z1 z2 y t2 x2 t x y x1 z1 x2 z2"));
        assert_eq!(id.rhs, w("x1 t1 x z1 z2 y t2 x2 t y x x1 z1 x2 z2"));
    }

    #[test]
    fn z_pair_matches_display() {
        let id = z_pair(1, &Perm::identity(2), &Perm::identity(2)).unwrap();
        assert_eq!(
            id.lhs,
            w("x1 t1 x2 t2 x z1 s1 y z2 x y x1 z1 x2 z2 t s1")
        );
    }

    #[test]
    fn pair_sides_differ_by_one_adjacent_swap() {
        for n in 1..=2 {
            for maker in [w_pair, z_pair] {
                let id = maker(n, &Perm::identity(2 * n), &Perm::identity(2 * n)).unwrap();
                let difference: Vec<usize> = (0..id.lhs.len())
                    .filter(|&i| id.lhs.letters()[i] != id.rhs.letters()[i])
                    .collect();
                assert_eq!(difference.len(), 2);
                assert_eq!(difference[0] + 1, difference[1]);
            }
        }
    }

    #[test]
    fn omega_counts() {
        assert_eq!(omega(1, 1).unwrap().len(), 6);
        assert_eq!(omega(2, 1).unwrap().len(), 6);
        assert_eq!(omega(1, 0).unwrap().len(), 2);
        assert!(omega(2, 0).unwrap()[1].label().starts_with("eta"));
    }

    #[test]
    fn families_are_balanced_and_2_limited() {
        let mut pool = phi(3);
        pool.extend(psi1(3));
        pool.push(alpha(2).unwrap());
        pool.push(beta(2).unwrap());
        pool.push(sq_merge(3).unwrap());
        for id in pool {
            if id.label() == "i11" {
                // The ambient axiom adds an occurrence by design.
                continue;
            }
            assert!(is_balanced(&id.lhs, &id.rhs), "{id} unbalanced");
            assert!(id.is_2_limited(), "{id} not 2-limited");
        }
    }

    #[test]
    fn delta_specializes_to_kappa() {
        use crate::identity::Substitution;
        for k in 1..=3 {
            let phi = Substitution::of(&[
                (&format!("y{k}"), "1"),
                (&format!("y{}", k + 1), "x"),
            ]);
            let d = delta(k, k).unwrap();
            let kap = kappa(k).unwrap();
            assert_eq!(phi.apply(&d.lhs), kap.lhs, "k={k}");
            assert_eq!(phi.apply(&d.rhs), kap.rhs, "k={k}");
        }
    }

    #[test]
    fn axiom_set_parsing() {
        let set = parse_axiom_set("i11,kappa1").unwrap();
        assert_eq!(set.len(), 2);
        let set = parse_axiom_set("delta:2:1, epsilon0").unwrap();
        assert_eq!(set[0].label(), "delta2_1");
        assert_eq!(set[1].label(), "epsilon0");
        let set = parse_axiom_set("omega1:1").unwrap();
        assert_eq!(set.len(), 6);
        assert!(parse_axiom_set("frob1").is_err());
        assert!(parse_axiom_set("").is_err());
    }
}
