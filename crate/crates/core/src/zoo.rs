//! Concrete groups and elements: cyclic and elementary abelian groups in their
//! regular action, alternating groups with distinguished generating pairs,
//! PSL(2,p) on the projective line, and the wreath-product data behind the
//! coset-graph families.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{direct_power_with_top, wreath_element, PermGroup};
use crate::perm::{Permutation, Point};
use crate::Error;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<(), Error> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// The n-cycle `(0 1 .. n-1)`.
pub fn long_cycle(n: usize) -> Permutation {
    let images = (0..n as Point).map(|i| (i + 1) % n as Point).collect();
    Permutation::from_images(images).expect("rotation is a bijection")
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).expect("transposition"));
        gens.push(long_cycle(n));
    }
    PermGroup::new(n, gens).expect("positive degree")
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i as Point]]).expect("3-cycle"))
        .collect();
    PermGroup::new(n, gens).expect("positive degree")
}

/// Cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, alloc::vec![long_cycle(n)]).expect("positive degree")
}

/// Dihedral group of order `2n` on the vertices of an n-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let reflection = (0..n as Point).map(|i| (n as Point - i) % n as Point).collect();
    PermGroup::new(
        n,
        alloc::vec![
            long_cycle(n),
            Permutation::from_images(reflection).expect("reflection")
        ],
    )
    .expect("positive degree")
}

/// `Z_p` (k = 1) or `Z_p^2` (k = 2) acting regularly on itself. In the second
/// case the point `(x, y)` is numbered `x*p + y`.
pub fn cyclic_and_elementary(p: u64, k: u32) -> Result<PermGroup, Error> {
    check_odd_prime(p)?;
    let n = p as usize;
    match k {
        1 => Ok(cyclic(n)),
        2 => {
            let shift = |dx: usize, dy: usize| {
                let images = (0..n * n)
                    .map(|v| {
                        let (x, y) = (v / n, v % n);
                        (((x + dx) % n) * n + (y + dy) % n) as Point
                    })
                    .collect();
                Permutation::from_images(images).expect("translation")
            };
            PermGroup::new(n * n, alloc::vec![shift(1, 0), shift(0, 1)])
        }
        _ => Err(Error::Inadmissible(format!("k = {k}, expected 1 or 2"))),
    }
}

/// A group with a distinguished pair of generators and the order facts that
/// were checked when it was built.
#[derive(Clone, Debug)]
pub struct GeneratingPair {
    pub group: PermGroup,
    pub a: Permutation,
    pub b: Permutation,
    pub certified: Vec<(String, u128)>,
}

impl GeneratingPair {
    fn certify(&mut self, name: &str, x: &Permutation, expect: impl Fn(u128) -> bool) -> Result<(), Error> {
        let order = x.order();
        if !expect(order) {
            return Err(Error::AssertionFailed(format!("order({name}) = {order}")));
        }
        self.certified.push((format!("order({name})"), order));
        Ok(())
    }

    /// Evaluates a word in `a` and `b`, see [`parse_word`].
    pub fn word(&self, word: &str) -> Result<Permutation, Error> {
        parse_word(word, &self.a, &self.b)
    }
}

/// Evaluates a word such as `b^-1aba` or `ab^2a`, read left to right. Each
/// letter is `a` or `b` with an optional integer exponent; `1` is the identity.
pub fn parse_word(word: &str, a: &Permutation, b: &Permutation) -> Result<Permutation, Error> {
    let mut acc = Permutation::identity(a.degree());
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        let letter = match chars[i] {
            'a' => a,
            'b' => b,
            '1' => {
                i += 1;
                continue;
            }
            _ => return Err(Error::Parse(String::from(word))),
        };
        i += 1;
        let mut exp: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            exp = text.parse().map_err(|_| Error::Parse(String::from(word)))?;
        }
        let order = letter.order() as i64;
        let e = exp.rem_euclid(order) as u64;
        acc.mul_assign_unchecked(&letter.pow(e));
    }
    Ok(acc)
}

/// Which of the two alternating-group generating pairs to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltPair {
    /// `a = (0 1)(2 3)`, `b = (0 1 .. n-1)`: `a` an involution, `b` and `ab` of odd order.
    Involution,
    /// `a = (0 1 2)`, `b = (0 1 .. n-1)`: both of odd order.
    OddOrders,
}

/// Outcome of checking that no automorphism swaps the two generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwapCheck {
    /// The generators have different orders.
    DifferentOrders,
    /// Exhaustive search over conjugating permutations found none.
    NoConjugator,
    /// Not decided for this degree.
    Unverified,
}

/// Largest degree for which the swap check searches conjugating permutations.
pub const SWAP_SEARCH_MAX_DEGREE: usize = 9;

pub fn alt_with_pair(n: usize, kind: AltPair) -> Result<GeneratingPair, Error> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::Inadmissible(format!("n = {n}, odd n >= 5 required")));
    }
    let a = match kind {
        AltPair::Involution => Permutation::from_cycles(n, &[&[0, 1], &[2, 3]])?,
        AltPair::OddOrders => Permutation::from_cycles(n, &[&[0, 1, 2]])?,
    };
    let b = long_cycle(n);
    let full: u128 = (3..=n as u128).product();
    let group = PermGroup::new(n, alloc::vec![a.clone(), b.clone()])?.with_order_upper_bound(full);
    let mut pair = GeneratingPair {
        group,
        a: a.clone(),
        b: b.clone(),
        certified: Vec::new(),
    };
    match kind {
        AltPair::Involution => {
            pair.certify("a", &a, |o| o == 2)?;
            pair.certify("b", &b, |o| o % 2 == 1)?;
            pair.certify("ab", &(&a * &b), |o| o % 2 == 1)?;
        }
        AltPair::OddOrders => {
            pair.certify("a", &a, |o| o % 2 == 1)?;
            pair.certify("b", &b, |o| o % 2 == 1)?;
        }
    }
    let order = pair.group.order();
    if order != full {
        return Err(Error::AssertionFailed(format!("|<a,b>| = {order}, expected {full}")));
    }
    pair.certified.push((String::from("order(<a,b>)"), order));
    Ok(pair)
}

/// Decides whether some automorphism of Alt(n) (n odd, n >= 5, so every
/// automorphism is conjugation in Sym(n)) swaps `a` and `b`. Returns the
/// reason if none does, or an error if one is found.
pub fn check_no_swap(pair: &GeneratingPair) -> Result<SwapCheck, Error> {
    let n = pair.a.degree();
    if n <= SWAP_SEARCH_MAX_DEGREE {
        if find_conjugator(&[(pair.a.clone(), pair.b.clone()), (pair.b.clone(), pair.a.clone())]).is_some() {
            return Err(Error::AssertionFailed(String::from(
                "an automorphism swaps the generators",
            )));
        }
        return Ok(SwapCheck::NoConjugator);
    }
    if pair.a.order() != pair.b.order() {
        return Ok(SwapCheck::DifferentOrders);
    }
    Ok(SwapCheck::Unverified)
}

/// A permutation `c` with `x^c = y` for every pair `(x, y)`, found by
/// backtracking over the image of one point per orbit of the `x`s.
pub fn find_conjugator(pairs: &[(Permutation, Permutation)]) -> Option<Permutation> {
    let n = pairs.first()?.0.degree();
    if pairs
        .iter()
        .any(|(x, y)| x.degree() != n || y.degree() != n || x.order() != y.order())
    {
        return None;
    }
    let mut c = alloc::vec![u32::MAX; n];
    let mut used = alloc::vec![false; n];
    if search_conjugator(pairs, &mut c, &mut used) {
        Permutation::from_images(c).ok()
    } else {
        None
    }
}

fn search_conjugator(pairs: &[(Permutation, Permutation)], c: &mut [u32], used: &mut [bool]) -> bool {
    let Some(start) = c.iter().position(|&x| x == u32::MAX) else {
        return true;
    };
    for target in 0..c.len() {
        if used[target] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(pairs, c, used, start, target as u32, &mut assigned) && search_conjugator(pairs, c, used) {
            return true;
        }
        for i in assigned {
            used[c[i] as usize] = false;
            c[i] = u32::MAX;
        }
    }
    false
}

/// Sets `c(start) = target` and follows the forced images `c(x(i)) = y(c(i))`.
fn propagate(
    pairs: &[(Permutation, Permutation)],
    c: &mut [u32],
    used: &mut [bool],
    start: usize,
    target: u32,
    assigned: &mut Vec<usize>,
) -> bool {
    let mut stack = alloc::vec![(start, target)];
    while let Some((i, t)) = stack.pop() {
        if c[i] != u32::MAX {
            if c[i] != t {
                return false;
            }
            continue;
        }
        if used[t as usize] {
            return false;
        }
        c[i] = t;
        used[t as usize] = true;
        assigned.push(i);
        for (x, y) in pairs {
            stack.push((x.image(i as Point) as usize, y.image(t)));
        }
    }
    true
}

/// An element of PSL(2,p): a determinant-one matrix `[[m0, m1], [m2, m3]]`
/// up to sign, stored with its first nonzero entry in `1..=(p-1)/2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Psl2Element {
    p: u64,
    m: [u64; 4],
}

impl Psl2Element {
    pub fn new(p: u64, entries: [i64; 4]) -> Result<Self, Error> {
        check_odd_prime(p)?;
        let m = entries.map(|e| e.rem_euclid(p as i64) as u64);
        if (m[0] * m[3] + p * p - m[1] * m[2] % p) % p != 1 {
            return Err(Error::AssertionFailed(String::from("determinant is not 1")));
        }
        Ok(Psl2Element { p, m }.canonical())
    }

    fn canonical(self) -> Self {
        let p = self.p;
        let lead = *self.m.iter().find(|&&x| x != 0).expect("invertible matrix");
        if lead > (p - 1) / 2 {
            Psl2Element {
                p,
                m: self.m.map(|x| (p - x) % p),
            }
        } else {
            self
        }
    }

    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn mul(&self, other: &Psl2Element) -> Psl2Element {
        let (p, a, b) = (self.p, self.m, other.m);
        Psl2Element {
            p,
            m: [
                (a[0] * b[0] + a[1] * b[2]) % p,
                (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p,
                (a[2] * b[1] + a[3] * b[3]) % p,
            ],
        }
        .canonical()
    }

    pub fn transpose(&self) -> Psl2Element {
        let m = self.m;
        Psl2Element {
            p: self.p,
            m: [m[0], m[2], m[1], m[3]],
        }
        .canonical()
    }

    /// Action on the projective line by `z -> (m0 z + m2) / (m1 z + m3)`,
    /// i.e. right multiplication of row vectors. Point `p` is infinity.
    pub fn to_permutation(&self) -> Permutation {
        let (p, m) = (self.p, self.m);
        let inf = p as Point;
        let mut images = Vec::with_capacity(p as usize + 1);
        for z in 0..p {
            let num = (m[0] * z + m[2]) % p;
            let den = (m[1] * z + m[3]) % p;
            images.push(if den == 0 {
                inf
            } else {
                (num * inv_mod(den, p) % p) as Point
            });
        }
        images.push(if m[1] == 0 {
            inf
        } else {
            (m[0] * inv_mod(m[1], p) % p) as Point
        });
        Permutation::from_images(images).expect("Moebius maps are bijections")
    }

    /// All elements of PSL(2,p) in increasing order.
    pub fn all(p: u64) -> Result<Vec<Psl2Element>, Error> {
        check_odd_prime(p)?;
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            let e = Psl2Element { p, m: [a, b, c, d] }.canonical();
                            if e.m == [a, b, c, d] {
                                out.push(e);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The element acting as `x` on the projective line, found by search.
    pub fn decode(p: u64, x: &Permutation) -> Result<Option<Psl2Element>, Error> {
        Ok(Psl2Element::all(p)?
            .into_iter()
            .find(|e| e.to_permutation() == *x))
    }
}

impl fmt::Debug for Psl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        write!(f, "[[{}, {}], [{}, {}]] mod {}", m[0], m[1], m[2], m[3], self.p)
    }
}

/// PSL(2,p) on the `p+1` points of the projective line (point `p` is
/// infinity) with `a = [[0,1],[-1,0]]` and `b = [[0,1],[-1,1]]`. Checks that
/// `a`, `b`, `ab`, `ab^2` have orders 2, 3, p, p; if the row-vector action
/// does not give these orders the transposed matrices are tried once.
pub fn psl2_on_projective_line(p: u64) -> Result<(PermGroup, GeneratingPair), Error> {
    check_odd_prime(p)?;
    if p < 5 {
        return Err(Error::Inadmissible(format!("p = {p}, p >= 5 required")));
    }
    let ma = Psl2Element::new(p, [0, 1, -1, 0])?;
    let mb = Psl2Element::new(p, [0, 1, -1, 1])?;
    let order = p as u128 * (p as u128 * p as u128 - 1) / 2;
    let mut last = None;
    for transpose in [false, true] {
        let (ea, eb) = if transpose {
            (ma.transpose(), mb.transpose())
        } else {
            (ma, mb)
        };
        let a = ea.to_permutation();
        let b = eb.to_permutation();
        let group = PermGroup::new(p as usize + 1, alloc::vec![a.clone(), b.clone()])?
            .with_order_upper_bound(order);
        let mut pair = GeneratingPair {
            group: group.clone(),
            a: a.clone(),
            b: b.clone(),
            certified: Vec::new(),
        };
        let ab = &a * &b;
        let abb = &ab * &b;
        let checked = pair
            .certify("a", &a, |o| o == 2)
            .and_then(|_| pair.certify("b", &b, |o| o == 3))
            .and_then(|_| pair.certify("ab", &ab, |o| o == p as u128))
            .and_then(|_| pair.certify("ab^2", &abb, |o| o == p as u128));
        match checked {
            Ok(()) => {
                let n = group.order();
                if n != order {
                    return Err(Error::AssertionFailed(format!(
                        "|PSL(2,{p})| = {n}, expected {order}"
                    )));
                }
                pair.certified.push((String::from("order(<a,b>)"), n));
                return Ok((group, pair));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("two attempts were made"))
}

/// The data of a coset-graph family realised inside `T wr S_k`.
#[derive(Clone, Debug)]
pub struct WreathData {
    pub t: GeneratingPair,
    pub k: usize,
    /// `phi~`, whose conjugation action is the automorphism `phi` of `H`.
    pub phi: Permutation,
    pub y: Permutation,
    pub h1: Permutation,
    pub h2: Option<Permutation>,
    pub v: PermGroup,
    pub h: PermGroup,
    /// The conjugates of `y` by `h1` and `h2`, used for subdirect fullness.
    pub y_conjugates: Vec<Permutation>,
    /// Names of the printed tuples that were recomputed and matched exactly.
    pub matched_tuples: Vec<&'static str>,
}

impl WreathData {
    /// Degree of `T` in its natural action.
    pub fn block_degree(&self) -> usize {
        self.t.a.degree()
    }

    /// Order of `T`.
    pub fn t_order(&self) -> u128 {
        self.t.group.order()
    }
}

fn tuple(pair: &GeneratingPair, words: &[&str], top: &str) -> Result<Permutation, Error> {
    let coords = words
        .iter()
        .map(|w| pair.word(w))
        .collect::<Result<Vec<_>, _>>()?;
    let top = Permutation::parse_cycles(words.len(), top)?;
    wreath_element(&coords, &top)
}

struct Printed {
    k: usize,
    phi: (&'static [&'static str], &'static str),
    y: &'static [&'static str],
    h1_top: &'static str,
    h2: Option<(&'static [&'static str], &'static str)>,
    y1: &'static [&'static str],
    y2: Option<&'static [&'static str]>,
}

fn build_wreath_data(p: u64, printed: &Printed) -> Result<WreathData, Error> {
    if !is_prime(p) || p < 7 {
        return Err(Error::Inadmissible(format!("p = {p}, prime p >= 7 required")));
    }
    let (t_group, t) = psl2_on_projective_line(p)?;
    let k = printed.k;
    let id_top = "()";
    let phi = tuple(&t, printed.phi.0, printed.phi.1)?;
    let y = tuple(&t, printed.y, id_top)?;
    let mut matched = Vec::new();
    let mismatch = |what: &str| Error::AssertionFailed(format!("recomputed {what} differs from the printed tuple"));
    if phi.pow(2) != y {
        return Err(mismatch("phi~^2 = y"));
    }
    matched.push("y");
    let a_words: Vec<&str> = alloc::vec!["a"; k];
    let h1 = tuple(&t, &a_words, printed.h1_top)?;
    let h2 = match printed.h2 {
        Some((words, top)) => {
            let h2 = tuple(&t, words, top)?;
            if h1.conjugate_unchecked(&phi) != h2 {
                return Err(mismatch("h2 = h1^phi~"));
            }
            matched.push("h2");
            Some(h2)
        }
        None => None,
    };
    let mut y_conjugates = Vec::new();
    let y1 = tuple(&t, printed.y1, id_top)?;
    if y.conjugate_unchecked(&h1) != y1 {
        return Err(mismatch("y1 = y^h1"));
    }
    matched.push("y1");
    y_conjugates.push(y1);
    if let (Some(words), Some(h2)) = (printed.y2, &h2) {
        let y2 = tuple(&t, words, id_top)?;
        if y.conjugate_unchecked(h2) != y2 {
            return Err(mismatch("y2 = y^h2"));
        }
        matched.push("y2");
        y_conjugates.push(y2);
    }

    let mut v_gens = alloc::vec![h1.clone()];
    v_gens.extend(h2.iter().cloned());
    let degree = k * t.a.degree();
    let v = PermGroup::new(degree, v_gens.clone())?;
    let tops: Vec<Permutation> = v_gens
        .iter()
        .map(|g| crate::group::wreath_decompose(g, t.a.degree()).map(|(_, top)| top))
        .collect::<Result<_, _>>()?;
    let top_order = PermGroup::new(k, tops.clone())?.order();
    let power = direct_power_with_top(&t_group, k, &[])?;
    let mut h_gens = power.generators().to_vec();
    h_gens.extend(v_gens);
    let bound = t_group.order().pow(k as u32) * top_order;
    let h = PermGroup::new(degree, h_gens)?.with_order_upper_bound(bound);
    Ok(WreathData {
        t,
        k,
        phi,
        y,
        h1,
        h2,
        v,
        h,
        y_conjugates,
        matched_tuples: matched,
    })
}

/// `H = T^4 : <h1, h2>` with `phi~ = (b, ba, ab, aba)(0 2)`: socle `T^4`, one
/// orbit on the four factors.
pub fn b4_data(p: u64) -> Result<WreathData, Error> {
    build_wreath_data(
        p,
        &Printed {
            k: 4,
            phi: (&["b", "ba", "ab", "aba"], "(0 2)"),
            y: &["bab", "baba", "ab^2", "ab^2a"],
            h1_top: "(0 1)(2 3)",
            h2: Some((
                &["b^-1aba", "ab^-1ab", "b^-1aba", "ab^-1ab"],
                "(0 3)(1 2)",
            )),
            y1: &["abab", "ababa", "b^2", "b^2a"],
            y2: Some(&["b^2ab^2ab", "ab^2abababa", "b^2abab^2", "ab^2"]),
        },
    )
}

/// `H = T^4 : <h1>` with `phi~ = (b^2ab, ab^2, b^2, a)(0 2)(1 3)`: two orbits of
/// length 2 on the factors, swapped by `phi~`.
pub fn c2_data(p: u64) -> Result<WreathData, Error> {
    build_wreath_data(
        p,
        &Printed {
            k: 4,
            phi: (&["b^2ab", "ab^2", "b^2", "a"], "(0 2)(1 3)"),
            y: &["b^2a", "ab^2a", "bab", "b^2"],
            h1_top: "(0 1)(2 3)",
            h2: None,
            y1: &["b^2", "ab^2", "ab^2a", "ababa"],
            y2: None,
        },
    )
}

/// `H = T^8 : <h1, h2>` with an eight-coordinate `phi~`: two orbits of length 4
/// on the factors, swapped by `phi~`.
pub fn c4_data(p: u64) -> Result<WreathData, Error> {
    build_wreath_data(
        p,
        &Printed {
            k: 8,
            phi: (
                &["b", "ba", "ab", "aba", "b^2", "ab", "ba", "ab^2a"],
                "(0 4)(1 7)(2 6)(3 5)",
            ),
            y: &["1", "a", "ab^2a", "ab^2", "1", "ababa", "b^2", "ab^2aba"],
            h1_top: "(0 1)(2 3)(4 5)(6 7)",
            h2: Some((
                &[
                    "b^2", "ab^2a", "aba", "b", "b^2aba", "ab^2ab", "b^2aba", "ab^2ab",
                ],
                "(0 3)(1 2)(4 7)(5 6)",
            )),
            y1: &["a", "1", "b^2a", "b^2", "bab", "1", "b^2ab", "ab^2a"],
            y2: Some(&[
                "b^2a", "ab^2a", "abab^2a", "1", "b^2ab", "ab^2ab^2aba", "b^2a", "1",
            ]),
        },
    )
}
