//! Bigraded Hilbert series built from quantum integers, the 𝒴-classes of
//! modules over Γ₃-images, and a symmetrizer-rank oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::adjoint::{epsilon_candidates, q3_zero};
use crate::groups::Elem;
use crate::linalg::{add_entry, sv_add_scaled, SparseEchelon, SparseVec};
use crate::ydmod::{BraidedSpace, YDModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("class {0} requires characteristic 2")]
    CharacteristicMismatch(YClass),
    #[error("no class assigned to root ({0},{1})")]
    MissingClass(u32, u32),
    #[error("coefficient overflow")]
    Overflow,
    #[error("tensor space of dimension {0} exceeds the cap")]
    Cap(u64),
    #[error("unknown oracle strategy `{0}`")]
    UnknownStrategy(String),
}

/// `(n)_{t₁^a t₂^b} = 1 + t₁^a t₂^b + … + (t₁^a t₂^b)^{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumFactor {
    pub n: u32,
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for QuantumFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |name: &str, e: u32| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let mono = [var("t1", self.a), var("t2", self.b)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>();
        write!(f, "({})_{{{}}}", self.n, mono.join(" "))
    }
}

/// Product of quantum-integer factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub factors: Vec<QuantumFactor>,
}

pub type Coefficients = BTreeMap<(u32, u32), u128>;

impl HilbertSeries {
    pub fn new(mut factors: Vec<QuantumFactor>) -> Self {
        factors.sort();
        HilbertSeries { factors }
    }

    /// Value at `t₁ = t₂ = 1`.
    pub fn dimension(&self) -> BigUint {
        self.factors.iter().fold(BigUint::from(1u32), |acc, f| acc * BigUint::from(f.n))
    }

    /// Full expansion.
    pub fn expand(&self) -> Result<Coefficients, HilbertError> {
        self.expand_truncated(u32::MAX)
    }

    /// Expansion keeping only total degree `≤ max_total`.
    pub fn expand_truncated(&self, max_total: u32) -> Result<Coefficients, HilbertError> {
        let mut acc: Coefficients = BTreeMap::from([((0, 0), 1)]);
        for f in &self.factors {
            let mut next = Coefficients::new();
            for (&(x, y), &c) in &acc {
                for k in 0..f.n {
                    let key = (x + k * f.a, y + k * f.b);
                    if key.0 as u64 + key.1 as u64 > max_total as u64 {
                        break;
                    }
                    let e = next.entry(key).or_insert(0);
                    *e = e.checked_add(c).ok_or(HilbertError::Overflow)?;
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn coefficient(&self, d1: u32, d2: u32) -> Result<u128, HilbertError> {
        Ok(self.expand_truncated(d1 + d2)?.get(&(d1, d2)).copied().unwrap_or(0))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let k = j - i;
            parts.push(if k == 1 { self.factors[i].to_string() } else { format!("{}^{k}", self.factors[i]) });
            i = j;
        }
        f.write_str(&parts.join(" "))
    }
}

// ---------------------------------------------------------------- 𝒴-classes

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum YClass {
    Y1,
    Y2,
    Y3,
    Y4,
    Y5,
    Y6,
    Y7,
    Y8,
}

impl YClass {
    pub const ALL: [YClass; 8] =
        [YClass::Y1, YClass::Y2, YClass::Y3, YClass::Y4, YClass::Y5, YClass::Y6, YClass::Y7, YClass::Y8];

    pub fn ascii(&self) -> &'static str {
        ["Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "Y7", "Y8"][*self as usize]
    }

    pub fn parse(s: &str) -> Option<YClass> {
        YClass::ALL.into_iter().find(|y| y.ascii() == s || y.to_string() == s)
    }
}

impl fmt::Display for YClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["𝒴₁", "𝒴₂", "𝒴₃", "𝒴₄", "𝒴₅", "𝒴₆", "𝒴₇", "𝒴₈"][*self as usize])
    }
}

/// `(n, k)` stands for `(n)_{t^k}`.
pub type UniFactor = (u32, u32);

fn h_p(p: u64) -> u32 {
    match p {
        2 => 3,
        3 => 2,
        _ => 6,
    }
}

fn h_prime_p(p: u64) -> u32 {
    if p == 3 {
        2
    } else {
        6
    }
}

/// Univariate Hilbert series of the Nichols algebra of a module in the class.
pub fn series_for_yclass(y: YClass, characteristic: u64) -> Result<Vec<UniFactor>, HilbertError> {
    Ok(match y {
        YClass::Y1 => vec![(2, 1), (2, 1), (3, 1)],
        YClass::Y2 if characteristic == 2 => vec![(3, 1), (4, 1), (6, 1), (6, 2)],
        YClass::Y2 => return Err(HilbertError::CharacteristicMismatch(y)),
        YClass::Y3 => vec![(2, 1)],
        YClass::Y4 => vec![(h_p(characteristic), 1)],
        YClass::Y5 => vec![(2, 1), (2, 1)],
        YClass::Y6 => vec![(3, 1), (3, 1)],
        YClass::Y7 => vec![(2, 1), (2, 1)],
        YClass::Y8 => vec![(2, 1), (h_prime_p(characteristic), 1)],
    })
}

pub fn univariate_series(factors: &[UniFactor]) -> HilbertSeries {
    HilbertSeries::new(factors.iter().map(|&(n, k)| QuantumFactor { n, a: k, b: 0 }).collect())
}

/// Substitutes `t ↦ t₁^{m₁} t₂^{m₂}` per root and multiplies.
pub fn assemble_factors(roots: &[((u32, u32), Vec<UniFactor>)]) -> HilbertSeries {
    let mut out = Vec::new();
    for ((m1, m2), fs) in roots {
        for &(n, k) in fs {
            out.push(QuantumFactor { n, a: k * m1, b: k * m2 });
        }
    }
    HilbertSeries::new(out)
}

pub fn assemble(roots: &[((u32, u32), Option<YClass>)], characteristic: u64) -> Result<HilbertSeries, HilbertError> {
    let mut data = Vec::new();
    for (r, y) in roots {
        let y = y.ok_or(HilbertError::MissingClass(r.0, r.1))?;
        data.push((*r, series_for_yclass(y, characteristic)?));
    }
    Ok(assemble_factors(&data))
}

/// The 𝒴-class of an absolutely simple module over a Γ₃-image.
pub fn classify_y(u: &YDModule) -> Option<YClass> {
    if !matches!(u.is_absolutely_simple(), Ok(true)) {
        return None;
    }
    let group = u.group();
    let p = u.field().characteristic();
    let minus_one = -&u.field().one();
    let supp = u.support();
    let es = epsilon_candidates(group);
    if es.is_empty() {
        return None;
    }
    let scalar = |x: Elem, h: Elem| u.component_action(x, h).as_scalar();
    match supp.len() {
        3 => {
            let x = supp[0];
            // x must be a γ-image: conjugation inverts ε
            if !es.iter().any(|&e| group.conj(x, e) == group.inv(e)) {
                return None;
            }
            let t = scalar(x, x)?;
            if t == minus_one {
                Some(YClass::Y1)
            } else if p == 2 && q3_zero(&t) {
                Some(YClass::Y2)
            } else {
                None
            }
        }
        1 => {
            let z = supp[0];
            if !group.is_central(z) {
                return None;
            }
            let t = scalar(z, z)?;
            match u.dim() {
                1 if t == minus_one => Some(YClass::Y3),
                1 if q3_zero(&-&t) => Some(YClass::Y4),
                2 if t == minus_one => Some(YClass::Y5),
                _ => None,
            }
        }
        2 => {
            let x = supp[0];
            for &e in &es {
                let z = group.mul(group.inv(e), x);
                if !group.is_central(z) {
                    continue;
                }
                let (t_e, t_z) = (scalar(x, e)?, scalar(x, z)?);
                let t_x = &t_e * &t_z;
                if t_z == t_e && q3_zero(&t_e) {
                    return Some(YClass::Y6);
                }
                if t_e.is_one() && t_z == minus_one {
                    return Some(YClass::Y7);
                }
                if t_x == minus_one && q3_zero(&t_e) {
                    return Some(YClass::Y8);
                }
            }
            None
        }
        _ => None,
    }
}

// ---------------------------------------------------------------- oracle

/// Ranks of the symmetrizer per bidegree `(d₁, d₂)`.
pub type RankTable = BTreeMap<(u32, u32), usize>;

/// A way of computing symmetrizer ranks.
pub trait RankStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn ranks(&self, u: &BraidedSpace, max_total: usize, cap: u64) -> Result<RankTable, HilbertError>;
}

pub fn strategies() -> Vec<Box<dyn RankStrategy>> {
    vec![Box::new(Incremental), Box::new(FullFactorized)]
}

pub fn strategy(name: &str) -> Result<Box<dyn RankStrategy>, HilbertError> {
    strategies().into_iter().find(|s| s.name() == name).ok_or_else(|| HilbertError::UnknownStrategy(name.into()))
}

type BlockKey = (u32, u32, Elem);

fn block_of(u: &BraidedSpace, digits: &[usize]) -> BlockKey {
    let g = u.module.group();
    let mut d = g.identity();
    let (mut a, mut b) = (0, 0);
    for &x in digits {
        if x < u.split {
            a += 1;
        } else {
            b += 1;
        }
        d = g.mul(d, u.module.degree(x));
    }
    (a, b, d)
}

fn decode(code: u64, n: usize, dim: u64) -> Vec<usize> {
    let mut out = vec![0; n];
    let mut c = code;
    for i in (0..n).rev() {
        out[i] = (c % dim) as usize;
        c /= dim;
    }
    out
}

fn ranks_from_blocks(blocks: &HashMap<BlockKey, SparseEchelon>, table: &mut RankTable) {
    for ((a, b, _), e) in blocks {
        *table.entry((*a, *b)).or_insert(0) += e.rank();
    }
}

fn fill_zero_bidegrees(table: &mut RankTable, max_total: usize) {
    for d in 0..=max_total as u32 {
        for a in 0..=d {
            table.entry((a, d - a)).or_insert(0);
        }
    }
}

/// `B_d = L_d(U ⊗ B_{d-1})` with `L_d = id + c₁ + c₂c₁ + … + c_{d-1}⋯c₁`.
pub struct Incremental;

impl RankStrategy for Incremental {
    fn name(&self) -> &'static str {
        "incremental"
    }

    fn ranks(&self, u: &BraidedSpace, max_total: usize, cap: u64) -> Result<RankTable, HilbertError> {
        let n = u.dim() as u64;
        let f = u.module.field();
        let mut table = RankTable::from([((0, 0), 1)]);
        let mut prev: HashMap<BlockKey, Vec<SparseVec>> = HashMap::new();
        for i in 0..u.dim() {
            prev.entry(block_of(u, &[i])).or_default().push(SparseVec::from([(i as u64, f.one())]));
        }
        if max_total >= 1 {
            for ((a, b, _), v) in &prev {
                *table.entry((*a, *b)).or_insert(0) += v.len();
            }
        }
        let g = u.module.group();
        for d in 2..=max_total {
            if prev.is_empty() {
                break;
            }
            let total = n.checked_pow(d as u32).ok_or(HilbertError::Cap(u64::MAX))?;
            if total > cap {
                return Err(HilbertError::Cap(total));
            }
            let shift = n.pow(d as u32 - 1);
            let mut keys: Vec<&BlockKey> = prev.keys().collect();
            keys.sort();
            let mut blocks: HashMap<BlockKey, SparseEchelon> = HashMap::new();
            for key in keys {
                for x in 0..u.dim() {
                    let (a, b) = if x < u.split { (key.0 + 1, key.1) } else { (key.0, key.1 + 1) };
                    let target = (a, b, g.mul(u.module.degree(x), key.2));
                    let echelon = blocks.entry(target).or_default();
                    for vec in &prev[key] {
                        let start: SparseVec = vec.iter().map(|(k, c)| (x as u64 * shift + k, c.clone())).collect();
                        let mut sum = start.clone();
                        let mut y = start;
                        for k in 0..d - 1 {
                            y = u.braid_at(d, k, &y);
                            sv_add_scaled(&mut sum, &y, &f.one());
                        }
                        echelon.insert(sum);
                    }
                }
            }
            ranks_from_blocks(&blocks, &mut table);
            prev = blocks
                .into_iter()
                .filter(|(_, e)| e.rank() > 0)
                .map(|(k, e)| (k, e.rows().to_vec()))
                .collect();
        }
        fill_zero_bidegrees(&mut table, max_total);
        Ok(table)
    }
}

/// `S_d = (id ⊗ S_{d-1})(id + c₁ + c₁c₂ + … + c₁⋯c_{d-1})` applied to every basis tensor.
pub struct FullFactorized;

struct Symmetrizer<'a> {
    u: &'a BraidedSpace,
    memo: HashMap<(usize, u64), SparseVec>,
}

impl Symmetrizer<'_> {
    fn apply_basis(&mut self, d: usize, code: u64) -> SparseVec {
        let f = self.u.module.field();
        if d == 1 {
            return SparseVec::from([(code, f.one())]);
        }
        if let Some(v) = self.memo.get(&(d, code)) {
            return v.clone();
        }
        let n = self.u.dim() as u64;
        let shift = n.pow(d as u32 - 1);
        // T_d e = Σ_k c₁ c₂ ⋯ c_k e
        let e = SparseVec::from([(code, f.one())]);
        let mut t = e.clone();
        for k in 1..d {
            let mut y = e.clone();
            for pos in (0..k).rev() {
                y = self.u.braid_at(d, pos, &y);
            }
            sv_add_scaled(&mut t, &y, &f.one());
        }
        let mut out = SparseVec::new();
        for (key, c) in t {
            let (head, tail) = (key / shift, key % shift);
            let inner = self.apply_basis(d - 1, tail);
            for (k2, c2) in inner {
                add_entry(&mut out, head * shift + k2, &(&c * &c2));
            }
        }
        self.memo.insert((d, code), out.clone());
        out
    }
}

impl FullFactorized {
    /// Image vectors of `S_d` on all basis tensors.
    pub fn images(u: &BraidedSpace, d: usize) -> Vec<SparseVec> {
        let mut s = Symmetrizer { u, memo: HashMap::new() };
        let total = (u.dim() as u64).pow(d as u32);
        (0..total).map(|c| s.apply_basis(d, c)).collect()
    }
}

impl RankStrategy for FullFactorized {
    fn name(&self) -> &'static str {
        "full"
    }

    fn ranks(&self, u: &BraidedSpace, max_total: usize, cap: u64) -> Result<RankTable, HilbertError> {
        let n = u.dim() as u64;
        let mut table = RankTable::from([((0, 0), 1)]);
        let mut s = Symmetrizer { u, memo: HashMap::new() };
        for d in 1..=max_total {
            let total = n.checked_pow(d as u32).ok_or(HilbertError::Cap(u64::MAX))?;
            if total > cap {
                return Err(HilbertError::Cap(total));
            }
            let mut blocks: HashMap<BlockKey, SparseEchelon> = HashMap::new();
            for code in 0..total {
                let key = block_of(u, &decode(code, d, n));
                let img = s.apply_basis(d, code);
                blocks.entry(key).or_default().insert(img);
            }
            ranks_from_blocks(&blocks, &mut table);
        }
        fill_zero_bidegrees(&mut table, max_total);
        Ok(table)
    }
}

/// `S_d = Σ_{w ∈ S_d}` of the Matsumoto lifts of reduced words, for small `d`.
pub fn permutation_sum_images(u: &BraidedSpace, d: usize) -> Vec<SparseVec> {
    let f = u.module.field();
    let words = reduced_words(d);
    let total = (u.dim() as u64).pow(d as u32);
    (0..total)
        .map(|code| {
            let e = SparseVec::from([(code, f.one())]);
            let mut out = SparseVec::new();
            for w in &words {
                let mut y = e.clone();
                // the lift of s_{i1} ⋯ s_{ik} is c_{i1} ⋯ c_{ik}; apply the rightmost first
                for &i in w.iter().rev() {
                    y = u.braid_at(d, i, &y);
                }
                sv_add_scaled(&mut out, &y, &f.one());
            }
            out
        })
        .collect()
}

/// One reduced word (0-based adjacent transpositions) for each permutation of `d` letters.
fn reduced_words(d: usize) -> Vec<Vec<usize>> {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let id: Vec<usize> = (0..d).collect();
    seen.insert(id.clone(), Vec::new());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for i in 0..d.saturating_sub(1) {
                let mut q = p.clone();
                q.swap(i, i + 1);
                if !seen.contains_key(&q) {
                    let mut w = seen[p].clone();
                    w.push(i);
                    seen.insert(q.clone(), w);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = seen.into_values().collect();
    out.sort();
    out
}

pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut e = SparseEchelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Compares oracle ranks with a series; returns the mismatching bidegrees.
pub fn compare(table: &RankTable, series: &HilbertSeries, max_total: u32) -> Result<Vec<(u32, u32, usize, u128)>, HilbertError> {
    let exp = series.expand_truncated(max_total)?;
    let mut bad = Vec::new();
    for (&(a, b), &r) in table {
        if a + b > max_total {
            continue;
        }
        let c = exp.get(&(a, b)).copied().unwrap_or(0);
        if r as u128 != c {
            bad.push((a, b, r, c));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::family;
    use crate::scalars::Field;
    use crate::ydmod::CentralizerRep;
    use std::sync::Arc;

    #[test]
    fn yclass_tables() {
        let dims = |y, p| univariate_series(&series_for_yclass(y, p).unwrap()).dimension();
        assert_eq!(dims(YClass::Y1, 0), BigUint::from(12u32));
        assert_eq!(series_for_yclass(YClass::Y4, 3).unwrap(), vec![(2, 1)]);
        assert_eq!(series_for_yclass(YClass::Y4, 2).unwrap(), vec![(3, 1)]);
        assert_eq!(series_for_yclass(YClass::Y8, 0).unwrap(), vec![(2, 1), (6, 1)]);
        assert_eq!(series_for_yclass(YClass::Y8, 3).unwrap(), vec![(2, 1), (2, 1)]);
        assert!(series_for_yclass(YClass::Y2, 0).is_err());
        assert_eq!(dims(YClass::Y2, 2), BigUint::from(432u32));
    }

    #[test]
    fn expansion_and_dimension() {
        let s = HilbertSeries::new(vec![
            QuantumFactor { n: 2, a: 1, b: 0 },
            QuantumFactor { n: 2, a: 1, b: 0 },
            QuantumFactor { n: 3, a: 1, b: 0 },
        ]);
        let e = s.expand().unwrap();
        let coeffs: Vec<u128> = (0..5).map(|k| e[&(k, 0)]).collect();
        assert_eq!(coeffs, vec![1, 3, 4, 3, 1]);
        assert_eq!(s.dimension(), BigUint::from(12u32));
        assert_eq!(s.to_string(), "(2)_{t1}^2 (3)_{t1}");
    }

    fn y1_module() -> YDModule {
        let g = family("Gamma3").unwrap().build(&[2, 1]).unwrap();
        let f = Field::create(0, 1).unwrap();
        let x = g.named("g").unwrap();
        let gens = g.centralizer(x).generators.clone();
        let vals = gens.iter().map(|_| f.from_i64(-1)).collect();
        YDModule::induce(g, &CentralizerRep::character(x, gens, vals), "v").unwrap()
    }

    #[test]
    fn y1_oracle_full_series() {
        let v = y1_module();
        assert_eq!(classify_y(&v), Some(YClass::Y1));
        let u = BraidedSpace::single(&v);
        let t = Incremental.ranks(&u, 5, 1 << 20).unwrap();
        let got: Vec<usize> = (0..=5).map(|d| t[&(d, 0)]).collect();
        assert_eq!(got, vec![1, 3, 4, 3, 1, 0]);
        let t2 = FullFactorized.ranks(&u, 4, 1 << 20).unwrap();
        assert_eq!(t2, Incremental.ranks(&u, 4, 1 << 20).unwrap());
    }

    #[test]
    fn factorized_matches_permutation_sum() {
        let v = y1_module();
        let u = BraidedSpace::single(&v);
        for d in 1..=3 {
            assert_eq!(rank_of(&FullFactorized::images(&u, d)), rank_of(&permutation_sum_images(&u, d)));
        }
        assert_eq!(reduced_words(3).len(), 6);
    }

    #[test]
    fn one_dimensional_minus_one() {
        let g: Arc<_> = family("Gamma3").unwrap().build(&[2, 2]).unwrap();
        let f = Field::create(0, 1).unwrap();
        let z = g.named("z").unwrap();
        let gens = g.centralizer(z).generators.clone();
        let vals = gens.iter().map(|&s| f.from_i64(if s == z { -1 } else { 1 })).collect();
        let m = YDModule::induce(g, &CentralizerRep::character(z, gens, vals), "w").unwrap();
        assert_eq!(classify_y(&m), Some(YClass::Y3));
        let t = Incremental.ranks(&BraidedSpace::single(&m), 3, 1000).unwrap();
        assert_eq!((0..=3).map(|d| t[&(d, 0)]).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
    }
}
