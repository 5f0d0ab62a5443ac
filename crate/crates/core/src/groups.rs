//! Finite quotients of Γ₂, Γ₃, Γ₄ and T, tabulated after normal-form rewriting.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element in its group's BFS enumeration.
pub type Elem = usize;

/// Normal-form exponent tuple. Unused trailing slots are zero.
pub type Tuple = [i32; 6];

const MAX_ORDER: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters {params:?} for {family}: {reason}")]
    InvalidParameters { family: String, params: Vec<u32>, reason: String },
    #[error("quotient is abelian")]
    Abelian,
    #[error("group of order {0} exceeds the tabulation limit")]
    TooLarge(usize),
    #[error("cannot parse word `{0}`")]
    BadWord(String),
    #[error("relation `{0}` fails in the quotient")]
    RelationFails(String),
    #[error("elements belong to different groups")]
    Mismatch,
}

/// Serialized form of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    pub parameters: Vec<u32>,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parameters.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.family, p.join(","))
    }
}

/// Normal-form arithmetic of one quotient.
pub trait Presentation: Send + Sync {
    fn spec(&self) -> GroupSpec;
    fn identity(&self) -> Tuple;
    fn multiply(&self, x: &Tuple, y: &Tuple) -> Tuple;
    /// Named generators in the order used for every BFS.
    fn generators(&self) -> Vec<(&'static str, Tuple)>;
    /// Further named elements, given as words in the generators.
    fn aliases(&self) -> Vec<(&'static str, &'static str)> {
        Vec::new()
    }
    /// Defining relations `lhs = rhs` as words.
    fn relations(&self) -> Vec<(String, String)>;
    /// Words tried first when choosing centralizer generators.
    fn preferred_words(&self) -> Vec<&'static str>;
    fn format(&self, t: &Tuple) -> String;
}

/// A family of quotients, selected by name.
pub trait GroupFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn parameter_names(&self) -> &'static [&'static str];
    fn validate(&self, params: &[u32]) -> Result<(), GroupError>;
    fn order(&self, params: &[u32]) -> usize;
    fn presentation(&self, params: &[u32]) -> Result<Box<dyn Presentation>, GroupError>;

    fn build(&self, params: &[u32]) -> Result<Arc<Group>, GroupError> {
        self.validate(params)?;
        let n = self.order(params);
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        Group::tabulate(self.presentation(params)?).map(Arc::new)
    }

    /// Valid parameter tuples with entries at most `bound`, by increasing order.
    fn candidates(&self, bound: u32) -> Vec<Vec<u32>>;
}

fn invalid(family: &str, params: &[u32], reason: &str) -> GroupError {
    GroupError::InvalidParameters { family: family.into(), params: params.to_vec(), reason: reason.into() }
}

fn two_params(family: &str, params: &[u32]) -> Result<(i32, i32), GroupError> {
    match params {
        [a, b] if *a > 0 && *b > 0 => Ok((*a as i32, *b as i32)),
        _ => Err(invalid(family, params, "expected two positive integers")),
    }
}

fn power_token(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn join_tokens(tokens: Vec<Option<String>>) -> String {
    let t: Vec<String> = tokens.into_iter().flatten().collect();
    if t.is_empty() {
        "1".into()
    } else {
        t.join(" ")
    }
}

// ---------------------------------------------------------------- Γ₃

/// `ε^i g^j z^k` with `ε³ = g^N = z^M = 1`, `gε = ε²g`, `z` central.
struct Gamma3Quotient {
    n: i32,
    m: i32,
}

impl Presentation for Gamma3Quotient {
    fn spec(&self) -> GroupSpec {
        GroupSpec { family: "Gamma3".into(), parameters: vec![self.n as u32, self.m as u32] }
    }
    fn identity(&self) -> Tuple {
        [0; 6]
    }
    fn multiply(&self, x: &Tuple, y: &Tuple) -> Tuple {
        let sign = if x[1] % 2 == 0 { 1 } else { -1 };
        [
            (x[0] + sign * y[0]).rem_euclid(3),
            (x[1] + y[1]).rem_euclid(self.n),
            (x[2] + y[2]).rem_euclid(self.m),
            0,
            0,
            0,
        ]
    }
    fn generators(&self) -> Vec<(&'static str, Tuple)> {
        vec![("e", [1, 0, 0, 0, 0, 0]), ("g", [0, 1, 0, 0, 0, 0]), ("z", [0, 0, 1 % self.m, 0, 0, 0])]
    }
    fn relations(&self) -> Vec<(String, String)> {
        vec![
            ("g e".into(), "e^2 g".into()),
            ("z g".into(), "g z".into()),
            ("z e".into(), "e z".into()),
            ("e^3".into(), "1".into()),
            (format!("g^{}", self.n), "1".into()),
            (format!("z^{}", self.m), "1".into()),
        ]
    }
    fn preferred_words(&self) -> Vec<&'static str> {
        vec!["e", "g", "z", "g^2", "e z", "g z"]
    }
    fn format(&self, t: &Tuple) -> String {
        join_tokens(vec![power_token("e", t[0]), power_token("g", t[1]), power_token("z", t[2])])
    }
}

struct Gamma3Family;

impl GroupFamily for Gamma3Family {
    fn name(&self) -> &'static str {
        "Gamma3"
    }
    fn parameter_names(&self) -> &'static [&'static str] {
        &["N (order of g)", "M (order of z)"]
    }
    fn validate(&self, params: &[u32]) -> Result<(), GroupError> {
        let (n, _) = two_params(self.name(), params)?;
        if n % 2 != 0 {
            return Err(invalid(self.name(), params, "the order of g must be even"));
        }
        Ok(())
    }
    fn order(&self, params: &[u32]) -> usize {
        3 * params[0] as usize * params[1] as usize
    }
    fn presentation(&self, params: &[u32]) -> Result<Box<dyn Presentation>, GroupError> {
        let (n, m) = two_params(self.name(), params)?;
        Ok(Box::new(Gamma3Quotient { n, m }))
    }
    fn candidates(&self, bound: u32) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> =
            (1..=bound).filter(|n| n % 2 == 0).flat_map(|n| (1..=bound).map(move |m| vec![n, m])).collect();
        out.sort_by_key(|p| (self.order(p), p.clone()));
        out
    }
}

// ---------------------------------------------------------------- Γ₂, Γ₄

/// `ν^i a^j b^k` with `νⁿ = a^A = b^B = 1`, `ba = νab`, `νa = aν⁻¹`, `νb = bν`.
/// Named `e = ν`, `g = a`, `h = b`.
struct GammaNQuotient {
    n: i32,
    a: i32,
    b: i32,
}

impl Presentation for GammaNQuotient {
    fn spec(&self) -> GroupSpec {
        GroupSpec { family: format!("Gamma{}", self.n), parameters: vec![self.a as u32, self.b as u32] }
    }
    fn identity(&self) -> Tuple {
        [0; 6]
    }
    fn multiply(&self, x: &Tuple, y: &Tuple) -> Tuple {
        // b^k a^j' = ν^(k (j' mod 2)) a^j' b^k and a^j ν = ν^((-1)^j) a^j
        let sign = if x[1] % 2 == 0 { 1 } else { -1 };
        let shift = y[0] + x[2] * y[1].rem_euclid(2);
        [
            (x[0] + sign * shift).rem_euclid(self.n),
            (x[1] + y[1]).rem_euclid(self.a),
            (x[2] + y[2]).rem_euclid(self.b),
            0,
            0,
            0,
        ]
    }
    fn generators(&self) -> Vec<(&'static str, Tuple)> {
        vec![("h", [0, 0, 1, 0, 0, 0]), ("e", [1, 0, 0, 0, 0, 0]), ("g", [0, 1, 0, 0, 0, 0])]
    }
    fn relations(&self) -> Vec<(String, String)> {
        vec![
            ("h g".into(), "e g h".into()),
            ("e g".into(), "g e^-1".into()),
            ("e h".into(), "h e".into()),
            (format!("e^{}", self.n), "1".into()),
            (format!("g^{}", self.a), "1".into()),
            (format!("h^{}", self.b), "1".into()),
        ]
    }
    fn preferred_words(&self) -> Vec<&'static str> {
        vec!["e", "g", "h", "e^2", "g^2", "h^2", "e^-1 h^2", "e g", "e h"]
    }
    fn format(&self, t: &Tuple) -> String {
        join_tokens(vec![power_token("e", t[0]), power_token("g", t[1]), power_token("h", t[2])])
    }
}

struct GammaNFamily {
    n: u32,
    name: &'static str,
}

impl GroupFamily for GammaNFamily {
    fn name(&self) -> &'static str {
        self.name
    }
    fn parameter_names(&self) -> &'static [&'static str] {
        &["A (order of a = g)", "B (order of b = h)"]
    }
    fn validate(&self, params: &[u32]) -> Result<(), GroupError> {
        let (a, b) = two_params(self.name, params)?;
        if a % 2 != 0 {
            return Err(invalid(self.name, params, "the order of a must be even"));
        }
        if b % self.n as i32 != 0 {
            return Err(invalid(self.name, params, "the order of b must be a multiple of n"));
        }
        Ok(())
    }
    fn order(&self, params: &[u32]) -> usize {
        self.n as usize * params[0] as usize * params[1] as usize
    }
    fn presentation(&self, params: &[u32]) -> Result<Box<dyn Presentation>, GroupError> {
        let (a, b) = two_params(self.name, params)?;
        Ok(Box::new(GammaNQuotient { n: self.n as i32, a, b }))
    }
    fn candidates(&self, bound: u32) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut out: Vec<Vec<u32>> = (1..=bound)
            .filter(|a| a % 2 == 0)
            .flat_map(|a| (1..=bound).filter(move |b| b % n == 0).map(move |b| vec![a, b]))
            .collect();
        out.sort_by_key(|p| (self.order(p), p.clone()));
        out
    }
}

// ---------------------------------------------------------------- T

/// `SL(2,3) × C_K × C_M`; `x_i ↦ (X_i, 1, 0)`, `z ↦ (I, 0, 1)`.
/// Tuple layout `[a, b, c, d, k, m]` for the matrix `[[a, b], [c, d]]`.
struct TQuotient {
    k: i32,
    m: i32,
}

fn mat3(x: &Tuple, y: &Tuple) -> [i32; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]).rem_euclid(3),
        (x[0] * y[1] + x[1] * y[3]).rem_euclid(3),
        (x[2] * y[0] + x[3] * y[2]).rem_euclid(3),
        (x[2] * y[1] + x[3] * y[3]).rem_euclid(3),
    ]
}

impl Presentation for TQuotient {
    fn spec(&self) -> GroupSpec {
        GroupSpec { family: "T".into(), parameters: vec![self.k as u32, self.m as u32] }
    }
    fn identity(&self) -> Tuple {
        [1, 0, 0, 1, 0, 0]
    }
    fn multiply(&self, x: &Tuple, y: &Tuple) -> Tuple {
        let p = mat3(x, y);
        [p[0], p[1], p[2], p[3], (x[4] + y[4]).rem_euclid(self.k), (x[5] + y[5]).rem_euclid(self.m)]
    }
    fn generators(&self) -> Vec<(&'static str, Tuple)> {
        vec![
            ("x1", [1, 1, 0, 1, 1 % self.k, 0]),
            ("x2", [1, 0, 2, 1, 1 % self.k, 0]),
            ("z", [1, 0, 0, 1, 0, 1 % self.m]),
        ]
    }
    fn aliases(&self) -> Vec<(&'static str, &'static str)> {
        vec![("x3", "x2 x1 x2^-1"), ("x4", "x1 x2 x1^-1")]
    }
    fn relations(&self) -> Vec<(String, String)> {
        vec![
            ("z x1".into(), "x1 z".into()),
            ("z x2".into(), "x2 z".into()),
            ("x1 x2 x1".into(), "x2 x1 x2".into()),
            ("x1^3".into(), "x2^3".into()),
            ("x3 x1".into(), "x1 x4".into()),
            (format!("z^{}", self.m), "1".into()),
        ]
    }
    fn preferred_words(&self) -> Vec<&'static str> {
        vec!["x1", "x2", "z", "x2 x3", "x1 x2", "x1^3"]
    }
    fn format(&self, t: &Tuple) -> String {
        let mut s = format!("[[{},{}],[{},{}]]", t[0], t[1], t[2], t[3]);
        if let Some(k) = power_token("c", t[4]) {
            s.push(' ');
            s.push_str(&k);
        }
        if let Some(m) = power_token("z", t[5]) {
            s.push(' ');
            s.push_str(&m);
        }
        s
    }
}

struct TFamily;

impl GroupFamily for TFamily {
    fn name(&self) -> &'static str {
        "T"
    }
    fn parameter_names(&self) -> &'static [&'static str] {
        &["K (order of the scalar part of x_i)", "M (order of z)"]
    }
    fn validate(&self, params: &[u32]) -> Result<(), GroupError> {
        two_params(self.name(), params).map(|_| ())
    }
    fn order(&self, params: &[u32]) -> usize {
        24 * params[0] as usize * params[1] as usize
    }
    fn presentation(&self, params: &[u32]) -> Result<Box<dyn Presentation>, GroupError> {
        let (k, m) = two_params(self.name(), params)?;
        Ok(Box::new(TQuotient { k, m }))
    }
    fn candidates(&self, bound: u32) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = (1..=bound).flat_map(|k| (1..=bound).map(move |m| vec![k, m])).collect();
        out.sort_by_key(|p| (self.order(p), p.clone()));
        out
    }
}

/// All group families by name.
pub fn families() -> Vec<Box<dyn GroupFamily>> {
    vec![
        Box::new(GammaNFamily { n: 2, name: "Gamma2" }),
        Box::new(Gamma3Family),
        Box::new(GammaNFamily { n: 4, name: "Gamma4" }),
        Box::new(TFamily),
    ]
}

pub fn family(name: &str) -> Result<Box<dyn GroupFamily>, GroupError> {
    families().into_iter().find(|f| f.name() == name).ok_or_else(|| GroupError::UnknownFamily(name.into()))
}

pub fn build(spec: &GroupSpec) -> Result<Arc<Group>, GroupError> {
    family(&spec.family)?.build(&spec.parameters)
}

// ---------------------------------------------------------------- tabulated group

pub struct Group {
    pres: Box<dyn Presentation>,
    elements: Vec<Tuple>,
    index: HashMap<Tuple, Elem>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<(String, Elem)>,
    named: Vec<(String, Elem)>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.spec(), self.order())
    }
}

/// A subgroup as element set plus generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub generators: Vec<Elem>,
    pub elements: Vec<Elem>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.member[x]
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

impl Group {
    pub fn tabulate(pres: Box<dyn Presentation>) -> Result<Group, GroupError> {
        let id = pres.identity();
        let gens = pres.generators();
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0)]);
        // element j = gens[step[j].0] * elements[step[j].1]
        let mut step = vec![(0usize, 0usize)];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            for (k, (_, s)) in gens.iter().enumerate() {
                let y = pres.multiply(s, &x);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_ORDER {
                        return Err(GroupError::TooLarge(elements.len()));
                    }
                    index.insert(y, elements.len());
                    elements.push(y);
                    step.push((k, head));
                }
            }
            head += 1;
        }
        let n = elements.len();
        let right: Vec<Vec<u32>> = elements
            .iter()
            .map(|x| gens.iter().map(|(_, s)| index[&pres.multiply(x, s)] as u32).collect())
            .collect();
        // column by column: x (s p) = (x s) p, and column p is already filled
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
        }
        for j in 1..n {
            let (k, p) = step[j];
            for i in 0..n {
                table[i * n + j] = table[right[i][k] as usize * n + p];
            }
        }
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
        }
        let generators: Vec<(String, Elem)> = gens.iter().map(|(nm, t)| (nm.to_string(), index[t])).collect();
        let mut g = Group { pres, elements, index, table, inverse, generators: generators.clone(), named: generators };
        for (name, word) in g.pres.aliases() {
            let e = g.word(word)?;
            g.named.push((name.to_string(), e));
        }
        if g.is_abelian() {
            return Err(GroupError::Abelian);
        }
        g.check_relations()?;
        Ok(g)
    }

    pub fn spec(&self) -> GroupSpec {
        self.pres.spec()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.elements.len() + y] as Elem
    }

    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x] as Elem
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    /// `h x h⁻¹`.
    pub fn conj(&self, h: Elem, x: Elem) -> Elem {
        self.mul(self.mul(h, x), self.inv(h))
    }

    pub fn commutes(&self, x: Elem, y: Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn tuple(&self, x: Elem) -> Tuple {
        self.elements[x]
    }

    pub fn from_tuple(&self, t: &Tuple) -> Option<Elem> {
        self.index.get(t).copied()
    }

    pub fn format(&self, x: Elem) -> String {
        self.pres.format(&self.elements[x])
    }

    pub fn multiply_tuples(&self, x: &Tuple, y: &Tuple) -> Result<Tuple, GroupError> {
        let (Some(a), Some(b)) = (self.from_tuple(x), self.from_tuple(y)) else {
            return Err(GroupError::Mismatch);
        };
        Ok(self.tuple(self.mul(a, b)))
    }

    pub fn generators(&self) -> &[(String, Elem)] {
        &self.generators
    }

    pub fn generator_elems(&self) -> Vec<Elem> {
        self.generators.iter().map(|(_, e)| *e).collect()
    }

    pub fn named(&self, name: &str) -> Option<Elem> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, e)| *e)
    }

    /// Evaluates a word such as `e^2 g z^-1`; `1` is the identity.
    pub fn word(&self, w: &str) -> Result<Elem, GroupError> {
        let mut acc = 0;
        for tok in w.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| GroupError::BadWord(w.into()))?),
                None => (tok, 1),
            };
            let x = self.named(name).ok_or_else(|| GroupError::BadWord(w.into()))?;
            acc = self.mul(acc, self.pow(x, exp));
        }
        Ok(acc)
    }

    pub fn check_relations(&self) -> Result<(), GroupError> {
        for (l, r) in self.pres.relations() {
            if self.word(&l)? != self.word(&r)? {
                return Err(GroupError::RelationFails(format!("{l} = {r}")));
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generator_elems();
        g.iter().all(|&x| g.iter().all(|&y| self.commutes(x, y)))
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.generators.iter().all(|(_, s)| self.commutes(*s, x))
    }

    /// Orbit of `x` under conjugation, BFS over generator conjugations.
    pub fn conjugacy_class(&self, x: Elem) -> Vec<Elem> {
        let mut out = vec![x];
        let mut seen = vec![false; self.order()];
        seen[x] = true;
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            head += 1;
            for (_, s) in &self.generators {
                let c = self.conj(*s, y);
                if !seen[c] {
                    seen[c] = true;
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() {
            if !seen[x] {
                let c = self.conjugacy_class(x);
                for &y in &c {
                    seen[y] = true;
                }
                out.push(c);
            }
        }
        out
    }

    /// Closure of `gens` under multiplication, in BFS order.
    pub fn generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        while let Some(y) = q.pop_front() {
            for &s in gens {
                let p = self.mul(s, y);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    q.push_back(p);
                }
            }
        }
        out
    }

    fn subgroup_from_predicate(&self, pred: impl Fn(Elem) -> bool) -> Subgroup {
        let member: Vec<bool> = (0..self.order()).map(&pred).collect();
        let mut generators = Vec::new();
        let mut covered = vec![false; self.order()];
        covered[0] = true;
        let mut candidates: Vec<Elem> = self.pres.preferred_words().iter().filter_map(|w| self.word(w).ok()).collect();
        candidates.extend(0..self.order());
        for c in candidates {
            if member[c] && !covered[c] {
                generators.push(c);
                for y in self.generated(&generators) {
                    covered[y] = true;
                }
            }
        }
        let elements = self.generated(&generators);
        Subgroup { generators, elements, member }
    }

    pub fn centralizer(&self, x: Elem) -> Subgroup {
        self.subgroup_from_predicate(|y| self.commutes(x, y))
    }

    pub fn center(&self) -> Subgroup {
        self.subgroup_from_predicate(|y| self.is_central(y))
    }

    /// Subgroup generated by `gens`, with `gens` kept as its generating set.
    pub fn subgroup(&self, gens: &[Elem]) -> Subgroup {
        let elements = self.generated(gens);
        let mut member = vec![false; self.order()];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup { generators: gens.to_vec(), elements, member }
    }

    /// Conjugation quandle on a union of classes, `y ◁ x = x y x⁻¹`.
    pub fn quandle(&self, elements: &[Elem]) -> Quandle {
        let pos: HashMap<Elem, usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let table = elements
            .iter()
            .map(|&y| elements.iter().map(|&x| pos[&self.conj(x, y)]).collect())
            .collect();
        Quandle { table }
    }

    pub fn quandle_of_class(&self, x: Elem) -> Quandle {
        self.quandle(&self.conjugacy_class(x))
    }
}

// ---------------------------------------------------------------- quandles

/// Finite quandle given by its table, `table[y][x] = y ◁ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quandle {
    pub table: Vec<Vec<usize>>,
}

impl Quandle {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn op(&self, y: usize, x: usize) -> usize {
        self.table[y][x]
    }

    pub fn is_quandle(&self) -> bool {
        let n = self.size();
        let idempotent = (0..n).all(|x| self.op(x, x) == x);
        let invertible = (0..n).all(|x| {
            let mut seen = vec![false; n];
            (0..n).all(|y| !std::mem::replace(&mut seen[self.op(y, x)], true))
        });
        idempotent && invertible && self.is_self_distributive()
    }

    /// `(y ◁ x) ◁ w = (y ◁ w) ◁ (x ◁ w)` for all triples.
    pub fn is_self_distributive(&self) -> bool {
        let n = self.size();
        (0..n).all(|y| {
            (0..n).all(|x| (0..n).all(|w| self.op(self.op(y, x), w) == self.op(self.op(y, w), self.op(x, w))))
        })
    }

    pub fn is_isomorphic(&self, other: &Quandle) -> bool {
        self.size() == other.size() && self.find_isomorphism(other).is_some()
    }

    /// A bijection `f` with `f(y ◁ x) = f(y) ◁ f(x)`, by backtracking.
    pub fn find_isomorphism(&self, other: &Quandle) -> Option<Vec<usize>> {
        let n = self.size();
        if n != other.size() {
            return None;
        }
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, 0, &mut f, &mut used).then_some(f)
    }

    fn extend_iso(&self, o: &Quandle, k: usize, f: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.size();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            f[k] = t;
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let img = self.op(a, b);
                    img > k || f[img] == o.op(f[a], f[b])
                })
            });
            if ok {
                used[t] = true;
                if self.extend_iso(o, k + 1, f, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        f[k] = usize::MAX;
        false
    }

    /// Name of the catalogued quandle isomorphic to this one.
    pub fn identify(&self) -> Option<&'static str> {
        if self.size() == 1 {
            return Some("trivial");
        }
        catalog().into_iter().find(|(_, q)| self.is_isomorphic(q)).map(|(n, _)| n)
    }
}

fn quandle_from(n: usize, op: impl Fn(usize, usize) -> usize) -> Quandle {
    Quandle { table: (0..n).map(|y| (0..n).map(|x| op(y, x)).collect()).collect() }
}

/// The five admissible supports, built from explicit formulas.
pub fn catalog() -> Vec<(&'static str, Quandle)> {
    // Z2^{2,2}: two blocks of size 2, each swapping the other block
    let z2 = quandle_from(4, |y, x| {
        let (s, i) = (y / 2, y % 2);
        let t = x / 2;
        2 * s + (i + usize::from(s != t)) % 2
    });
    // dihedral triangle i ◁ j = 2j - i, plus a trivial point
    let z31 = quandle_from(4, |y, x| if y < 3 && x < 3 { (2 * x + 6 - y) % 3 } else { y });
    // dihedral triangle plus a pair: pair element j shifts the triangle by 2(j+1), triangle swaps the pair
    let z32 = quandle_from(5, |y, x| match (y < 3, x < 3) {
        (true, true) => (2 * x + 6 - y) % 3,
        (true, false) => (y + 2 * (x - 2)) % 3,
        (false, true) => 7 - y,
        (false, false) => y,
    });
    // four-cycle block i ◁ j = 2j - i mod 4 with a pair block
    let z42 = quandle_from(6, |y, x| match (y < 4, x < 4) {
        (true, true) => (2 * x + 8 - y) % 4,
        (true, false) => (y + 8 - 2 * (x - 4) + 1) % 4,
        (false, true) => 9 - y,
        (false, false) => y,
    });
    // 3-cycles of A4 conjugate to (0 1 2), plus a trivial point
    let cycles = tetra_class();
    let zt = quandle_from(5, |y, x| {
        if y == 4 || x == 4 {
            return y;
        }
        let c = perm_conj(&cycles[x], &cycles[y]);
        cycles.iter().position(|p| *p == c).expect("class is closed under conjugation")
    });
    vec![("Z2^{2,2}", z2), ("Z3^{3,1}", z31), ("Z3^{3,2}", z32), ("Z4^{4,2}", z42), ("ZT^{4,1}", zt)]
}

type Perm = [usize; 4];

fn perm_mul(a: &Perm, b: &Perm) -> Perm {
    [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
}

fn perm_inv(a: &Perm) -> Perm {
    let mut r = [0; 4];
    for i in 0..4 {
        r[a[i]] = i;
    }
    r
}

fn perm_conj(h: &Perm, x: &Perm) -> Perm {
    perm_mul(&perm_mul(h, x), &perm_inv(h))
}

fn tetra_class() -> Vec<Perm> {
    let gens: [Perm; 2] = [[1, 2, 0, 3], [0, 2, 3, 1]];
    let mut out = vec![gens[0]];
    let mut head = 0;
    while head < out.len() {
        let y = out[head];
        head += 1;
        for s in &gens {
            let c = perm_conj(s, &y);
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3(n: u32, m: u32) -> Arc<Group> {
        family("Gamma3").unwrap().build(&[n, m]).unwrap()
    }

    #[test]
    fn gamma3_rewriting_examples() {
        let g = g3(4, 6);
        let (e, gg) = (g.named("e").unwrap(), g.named("g").unwrap());
        assert_eq!(g.tuple(g.mul(gg, e)), [2, 1, 0, 0, 0, 0]);
        assert_eq!(g.word("e e e").unwrap(), g.identity());
        let eg = g.mul(e, gg);
        assert_eq!(g.mul(eg, eg), g.word("g^2").unwrap());
    }

    #[test]
    fn gamma3_classes_and_centralizers() {
        let g = g3(4, 6);
        let x = g.named("g").unwrap();
        let mut cls = g.conjugacy_class(x);
        cls.sort();
        let mut expect = vec![g.word("g").unwrap(), g.word("e g").unwrap(), g.word("e^2 g").unwrap()];
        expect.sort();
        assert_eq!(cls, expect);
        assert_eq!(g.conjugacy_class(g.word("e z").unwrap()).len(), 2);
        assert_eq!(g.conjugacy_class(g.named("z").unwrap()).len(), 1);
        let c = g.centralizer(x);
        let expect = g.subgroup(&[g.word("g").unwrap(), g.word("z").unwrap()]);
        assert_eq!(c.order(), expect.order());
        assert!(expect.elements.iter().all(|&y| c.contains(y)));
        let c = g.centralizer(g.word("e z").unwrap());
        let expect = g.subgroup(&[g.word("e").unwrap(), g.word("z").unwrap(), g.word("g^2").unwrap()]);
        assert_eq!(c.order(), expect.order());
        assert!(expect.elements.iter().all(|&y| c.contains(y)));
        let z = g.center();
        assert!(z.contains(g.word("z").unwrap()) && z.contains(g.word("g^2").unwrap()));
        assert!(!z.contains(g.named("e").unwrap()));
    }

    #[test]
    fn gamma2_centralizer() {
        let g = family("Gamma2").unwrap().build(&[4, 4]).unwrap();
        let c = g.centralizer(g.named("g").unwrap());
        let expect = g.subgroup(&[g.word("e").unwrap(), g.word("g").unwrap(), g.word("h^2").unwrap()]);
        assert_eq!(c.order(), expect.order());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(family("Gamma3").unwrap().build(&[3, 2]).is_err());
        assert!(family("Gamma4").unwrap().build(&[2, 2]).is_err());
        assert!(family("Gamma5").is_err());
    }

    #[test]
    fn relations_hold_in_all_small_quotients() {
        for fam in families() {
            for p in fam.candidates(6).into_iter().filter(|p| fam.order(p) <= 200) {
                let g = fam.build(&p).unwrap();
                g.check_relations().unwrap();
                let n = g.order();
                for x in 0..n {
                    for y in 0..n {
                        for z in (0..n).step_by(7) {
                            assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                        }
                    }
                }
                let classes = g.conjugacy_classes();
                assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), n);
                for c in &classes {
                    assert_eq!(c.len() * g.centralizer(c[0]).order(), n);
                }
            }
        }
    }

    #[test]
    fn catalog_entries_are_quandles() {
        for (name, q) in catalog() {
            assert!(q.is_quandle(), "{name}");
        }
        let cat = catalog();
        for (i, (_, a)) in cat.iter().enumerate() {
            for (j, (_, b)) in cat.iter().enumerate() {
                assert_eq!(a.is_isomorphic(b), i == j);
            }
        }
    }

    #[test]
    fn supports_identify() {
        let g = g3(4, 6);
        let mut s = g.conjugacy_class(g.named("g").unwrap());
        s.push(g.named("z").unwrap());
        assert_eq!(g.quandle(&s).identify(), Some("Z3^{3,1}"));
        let mut s = g.conjugacy_class(g.named("g").unwrap());
        s.extend(g.conjugacy_class(g.word("e z").unwrap()));
        assert_eq!(g.quandle(&s).identify(), Some("Z3^{3,2}"));
        assert_eq!(g.quandle_of_class(g.named("z").unwrap()).identify(), Some("trivial"));

        let g = family("Gamma2").unwrap().build(&[2, 2]).unwrap();
        let mut s = g.conjugacy_class(g.named("g").unwrap());
        s.extend(g.conjugacy_class(g.named("h").unwrap()));
        assert_eq!(g.quandle(&s).identify(), Some("Z2^{2,2}"));

        let g = family("Gamma4").unwrap().build(&[2, 4]).unwrap();
        let mut s = g.conjugacy_class(g.named("g").unwrap());
        s.extend(g.conjugacy_class(g.named("h").unwrap()));
        assert_eq!(g.quandle(&s).identify(), Some("Z4^{4,2}"));

        let g = family("T").unwrap().build(&[2, 6]).unwrap();
        let mut s = g.conjugacy_class(g.named("x1").unwrap());
        assert_eq!(s.len(), 4);
        s.push(g.named("z").unwrap());
        assert_eq!(g.quandle(&s).identify(), Some("ZT^{4,1}"));
    }
}
