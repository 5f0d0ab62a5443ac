//! Rank-two Cartan schemes generated by reflecting a pair, their real roots
//! and the 𝒴-classes attached to the roots.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::adjoint::{classify_pair, AdjointError, CartanMatrix, ChainConfig, PairAnalysis, PairLabel, PairState};
use crate::hilbert::{classify_y, YClass};

pub const DEFAULT_OBJECT_CAP: usize = 16;
pub const ROOT_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("reflection undefined at {path}: {source}")]
    ReflectionUndefined { path: String, source: AdjointError },
    #[error("not finite within cap: more than {0} objects")]
    Cap(usize),
    #[error("infinite root system: no negative root within {0} steps")]
    InfiniteRoots(usize),
    #[error("unclassified reflected pair at root ({0},{1})")]
    Unclassified(i64, i64),
    #[error("unknown object identity `{0}`")]
    UnknownIdentity(String),
}

impl WeylError {
    pub fn is_cap(&self) -> bool {
        match self {
            WeylError::Cap(_) | WeylError::InfiniteRoots(_) => true,
            WeylError::ReflectionUndefined { source, .. } => source.is_cap(),
            _ => false,
        }
    }
}

/// Decides when two reflected pairs are the same object.
pub trait ObjectIdentity: Send + Sync {
    fn name(&self) -> &'static str;
    fn same(&self, a: &Object, b: &Object) -> bool;
}

/// Graded intertwiner search on both entries.
pub struct PairIso;

impl ObjectIdentity for PairIso {
    fn name(&self) -> &'static str {
        "pair-iso"
    }

    fn same(&self, a: &Object, b: &Object) -> bool {
        a.cartan == b.cartan && a.pair.is_isomorphic(&b.pair)
    }
}

/// Equal ℘-labels; unlabelled pairs fall back to intertwiner search.
pub struct ClassLabel;

impl ObjectIdentity for ClassLabel {
    fn name(&self) -> &'static str {
        "class-label"
    }

    fn same(&self, a: &Object, b: &Object) -> bool {
        if a.label == PairLabel::Unclassified || b.label == PairLabel::Unclassified {
            a.label == b.label && PairIso.same(a, b)
        } else {
            a.label == b.label && a.cartan == b.cartan
        }
    }
}

pub fn identities() -> Vec<Box<dyn ObjectIdentity>> {
    vec![Box::new(PairIso), Box::new(ClassLabel)]
}

pub fn identity(name: &str) -> Result<Box<dyn ObjectIdentity>, WeylError> {
    identities().into_iter().find(|s| s.name() == name).ok_or_else(|| WeylError::UnknownIdentity(name.into()))
}

/// Class labels only exist over Γ₃-images.
pub fn default_identity(pair: &PairState) -> Box<dyn ObjectIdentity> {
    if pair.group().spec().family == "Gamma3" {
        Box::new(ClassLabel)
    } else {
        Box::new(PairIso)
    }
}

fn subscript(i: usize) -> &'static str {
    if i == 1 {
        "R₁"
    } else {
        "R₂"
    }
}

/// Human-readable reflection word, leftmost applied last.
pub fn path_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "initial pair".into();
    }
    let w: String = word.iter().rev().map(|&i| subscript(i)).collect();
    format!("{w} image")
}

pub struct Object {
    pub pair: PairState,
    pub label: PairLabel,
    pub cartan: CartanMatrix,
    /// Reflection word reaching this object from the initial pair, first letter applied first.
    pub word: Vec<usize>,
    analysis: PairAnalysis,
}

/// Object graph with two involutions and a Cartan matrix per object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanGraph {
    pub cartan: Vec<CartanMatrix>,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
}

impl CartanGraph {
    pub fn len(&self) -> usize {
        self.cartan.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cartan.is_empty()
    }

    pub fn r(&self, i: usize, x: usize) -> usize {
        if i == 1 {
            self.r1[x]
        } else {
            self.r2[x]
        }
    }

    /// `r_i² = id` and `a^{r_i X}` row `i` equals `a^X` row `i`.
    pub fn check_axioms(&self) -> Result<(), String> {
        for x in 0..self.len() {
            if !self.cartan[x].is_valid() {
                return Err(format!("object {x}: invalid Cartan matrix {}", self.cartan[x]));
            }
            for i in 1..=2 {
                let y = self.r(i, x);
                if self.r(i, y) != x {
                    return Err(format!("r{i} is not an involution at object {x}"));
                }
                for j in 0..2 {
                    if self.cartan[y].entry(i - 1, j) != self.cartan[x].entry(i - 1, j) {
                        return Err(format!("row {i} changes along r{i} at object {x}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_standard(&self) -> bool {
        self.cartan.windows(2).all(|w| w[0] == w[1])
    }

    /// `s_i^X(v) = v − (a_{i1} v₁ + a_{i2} v₂) α_i`.
    pub fn s(&self, i: usize, x: usize, v: (i64, i64)) -> (i64, i64) {
        let a = self.cartan[x];
        let c = a.entry(i - 1, 0) as i64 * v.0 + a.entry(i - 1, 1) as i64 * v.1;
        if i == 1 {
            (v.0 - c, v.1)
        } else {
            (v.0, v.1 - c)
        }
    }

    /// `s_{i₁}^X s_{i₂}^{r_{i₁}X} ⋯ (α_j)` with the letters of `word`.
    pub fn apply_word(&self, x: usize, word: &[usize], j: usize) -> (i64, i64) {
        let mut objs = Vec::with_capacity(word.len());
        let mut y = x;
        for &i in word {
            objs.push(y);
            y = self.r(i, y);
        }
        let mut v = if j == 1 { (1, 0) } else { (0, 1) };
        for (k, &i) in word.iter().enumerate().rev() {
            v = self.s(i, objs[k], v);
        }
        v
    }

    fn alternating(&self, x: usize, first: usize, cap: usize) -> Result<Vec<Root>, WeylError> {
        let other = 3 - first;
        let mut out = Vec::new();
        for k in 1..=cap + 1 {
            if k > cap {
                return Err(WeylError::InfiniteRoots(cap));
            }
            let word: Vec<usize> = (0..k - 1).map(|l| if l % 2 == 0 { first } else { other }).collect();
            let simple = if k % 2 == 1 { first } else { other };
            let v = self.apply_word(x, &word, simple);
            if v.0 < 0 || v.1 < 0 {
                break;
            }
            let mut target = x;
            for &i in &word {
                target = self.r(i, target);
            }
            out.push(Root { vector: v, word, simple, object: target });
        }
        Ok(out)
    }

    /// Positive real roots at `x`, enumerated from the `α₁` side.
    pub fn positive_roots(&self, x: usize) -> Result<Vec<Root>, WeylError> {
        self.alternating(x, 1, ROOT_CAP)
    }

    /// The same set enumerated from the `α₂` side.
    pub fn positive_roots_from_second(&self, x: usize) -> Result<Vec<Root>, WeylError> {
        self.alternating(x, 2, ROOT_CAP)
    }

    /// Consistency of the two enumerations and of `Δ₊^{r_i X} = s_i(Δ₊^X ∖ {α_i}) ∪ {α_i}`.
    pub fn check_roots(&self) -> Result<(), String> {
        let sets: Vec<BTreeSet<(i64, i64)>> = (0..self.len())
            .map(|x| self.positive_roots(x).map(|r| r.iter().map(|r| r.vector).collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for x in 0..self.len() {
            let second: BTreeSet<_> =
                self.positive_roots_from_second(x).map_err(|e| e.to_string())?.iter().map(|r| r.vector).collect();
            let first_list = self.positive_roots(x).map_err(|e| e.to_string())?;
            if second != sets[x] || first_list.len() != sets[x].len() {
                return Err(format!("object {x}: the two alternating enumerations disagree"));
            }
            for i in 1..=2 {
                let alpha = if i == 1 { (1, 0) } else { (0, 1) };
                let mut image: BTreeSet<_> =
                    sets[x].iter().filter(|&&v| v != alpha).map(|&v| self.s(i, x, v)).collect();
                image.insert(alpha);
                if image != sets[self.r(i, x)] {
                    return Err(format!("object {x}: roots not carried to r{i} object"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub vector: (i64, i64),
    /// `s_{i₁} s_{i₂} ⋯` applied to `α_simple`.
    pub word: Vec<usize>,
    pub simple: usize,
    /// Object at which the root becomes simple.
    pub object: usize,
}

impl Root {
    pub fn coefficients(&self) -> (u32, u32) {
        (self.vector.0 as u32, self.vector.1 as u32)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, name: &str| match c {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{c}{name}")),
        };
        let parts: Vec<String> = [term(self.vector.0, "α₁"), term(self.vector.1, "α₂")].into_iter().flatten().collect();
        f.write_str(&parts.join("+"))
    }
}

pub struct CartanScheme2 {
    pub objects: Vec<Object>,
    pub graph: CartanGraph,
    pub identity: &'static str,
}

/// Closure of `{P}` under `R₁`, `R₂` up to the chosen object identity.
pub fn generate(
    pair: &PairState,
    identity: &dyn ObjectIdentity,
    cfg: &ChainConfig,
    cap: usize,
) -> Result<CartanScheme2, WeylError> {
    let make = |pair: PairState, word: Vec<usize>| -> Result<Object, WeylError> {
        let undefined = |source| WeylError::ReflectionUndefined { path: path_string(&word), source };
        let analysis = pair.analyze(cfg).map_err(undefined)?;
        let cartan = analysis.cartan().map_err(undefined)?;
        Ok(Object { label: classify_pair(&pair), pair, cartan, word, analysis })
    };
    let mut objects = vec![make(pair.clone(), Vec::new())?];
    let mut r1 = vec![usize::MAX];
    let mut r2 = vec![usize::MAX];
    let mut x = 0;
    while x < objects.len() {
        for i in 1..=2 {
            let image = {
                let o = &objects[x];
                let mut word = o.word.clone();
                word.push(i);
                let p = o.pair.reflect_with(i, &o.analysis).map_err(|source| WeylError::ReflectionUndefined {
                    path: path_string(&word),
                    source,
                })?;
                make(p, word)?
            };
            let target = match objects.iter().position(|o| identity.same(o, &image)) {
                Some(y) => y,
                None => {
                    if objects.len() >= cap {
                        return Err(WeylError::Cap(cap));
                    }
                    objects.push(image);
                    r1.push(usize::MAX);
                    r2.push(usize::MAX);
                    objects.len() - 1
                }
            };
            if i == 1 {
                r1[x] = target;
            } else {
                r2[x] = target;
            }
        }
        x += 1;
    }
    let graph = CartanGraph { cartan: objects.iter().map(|o| o.cartan).collect(), r1, r2 };
    Ok(CartanScheme2 { objects, graph, identity: identity.name() })
}

impl CartanScheme2 {
    pub fn check_axioms(&self) -> Result<(), String> {
        self.graph.check_axioms()
    }

    pub fn is_standard(&self) -> bool {
        self.graph.is_standard()
    }

    pub fn positive_roots(&self, x: usize) -> Result<Vec<Root>, WeylError> {
        self.graph.positive_roots(x)
    }

    pub fn record(&self) -> SchemeRecord {
        SchemeRecord {
            identity: self.identity.to_string(),
            standard: self.is_standard(),
            objects: self
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| ObjectRecord {
                    index: i,
                    path: path_string(&o.word),
                    label: o.label.ascii().to_string(),
                    cartan: o.cartan,
                    dims: [o.pair.v.dim(), o.pair.w.dim()],
                    r1: self.graph.r1[i],
                    r2: self.graph.r2[i],
                    roots: self
                        .positive_roots(i)
                        .map(|rs| rs.iter().map(|r| r.to_string()).collect())
                        .unwrap_or_default(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectRecord {
    pub index: usize,
    pub path: String,
    pub label: String,
    pub cartan: CartanMatrix,
    pub dims: [usize; 2],
    pub r1: usize,
    pub r2: usize,
    pub roots: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeRecord {
    pub identity: String,
    pub standard: bool,
    pub objects: Vec<ObjectRecord>,
}

impl fmt::Display for SchemeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.objects {
            writeln!(
                f,
                "object {} [{}] {} A={} dims={:?} R1->{} R2->{}",
                o.index, o.label, o.path, o.cartan, o.dims, o.r1, o.r2
            )?;
            writeln!(f, "  roots: {}", o.roots.join(", "))?;
        }
        write!(f, "standard: {}", self.standard)
    }
}

/// A root with the module sitting in its degree.
#[derive(Clone, Debug, Serialize)]
pub struct RootModule {
    pub root: Root,
    pub class: Option<YClass>,
    pub dim: usize,
}

/// For each root `s_{i₁}⋯s_{i_m}(α_j)` at `pair`, the `j`-th entry of `R_{i_m}⋯R_{i₁}(pair)`.
pub fn root_modules(pair: &PairState, roots: &[Root], cfg: &ChainConfig) -> Result<Vec<RootModule>, WeylError> {
    let mut out = Vec::new();
    for root in roots {
        let mut cur = pair.clone();
        for (k, &i) in root.word.iter().enumerate() {
            cur = cur.reflect(i, cfg).map_err(|source| WeylError::ReflectionUndefined {
                path: path_string(&root.word[..=k]),
                source,
            })?;
        }
        let m = cur.entry(root.simple);
        out.push(RootModule { root: root.clone(), class: classify_y(m), dim: m.dim() });
    }
    Ok(out)
}

/// Like [`root_modules`] but every root must receive a class.
pub fn root_module_assignment(
    pair: &PairState,
    roots: &[Root],
    cfg: &ChainConfig,
) -> Result<Vec<((u32, u32), YClass)>, WeylError> {
    root_modules(pair, roots, cfg)?
        .into_iter()
        .map(|rm| {
            rm.class
                .map(|c| (rm.root.coefficients(), c))
                .ok_or(WeylError::Unclassified(rm.root.vector.0, rm.root.vector.1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::family;
    use crate::scalars::Field;
    use crate::ydmod::{CentralizerRep, YDModule};

    fn c(a12: i32, a21: i32) -> CartanMatrix {
        CartanMatrix { a12, a21 }
    }

    fn vectors(roots: &[Root]) -> Vec<(i64, i64)> {
        roots.iter().map(|r| r.vector).collect()
    }

    #[test]
    fn standard_b2_roots() {
        let g = CartanGraph { cartan: vec![c(-2, -1)], r1: vec![0], r2: vec![0] };
        g.check_axioms().unwrap();
        g.check_roots().unwrap();
        assert!(g.is_standard());
        assert_eq!(vectors(&g.positive_roots(0).unwrap()), vec![(1, 0), (2, 1), (1, 1), (0, 1)]);
    }

    #[test]
    fn a1_times_a1() {
        let g = CartanGraph { cartan: vec![c(0, 0)], r1: vec![0], r2: vec![0] };
        assert!(g.is_standard());
        assert_eq!(vectors(&g.positive_roots(0).unwrap()), vec![(1, 0), (0, 1)]);
    }

    #[test]
    fn three_object_chain() {
        // a = 0, b = 1, c = 2
        let g = CartanGraph { cartan: vec![c(-2, -2), c(-2, -1), c(-4, -1)], r1: vec![1, 0, 2], r2: vec![0, 2, 1] };
        g.check_axioms().unwrap();
        g.check_roots().unwrap();
        assert!(!g.is_standard());
        let set = |x| vectors(&g.positive_roots(x).unwrap()).into_iter().collect::<BTreeSet<_>>();
        let want = |v: &[(i64, i64)]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(set(0), want(&[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 3)]));
        assert_eq!(set(1), want(&[(1, 0), (0, 1), (1, 1), (2, 1), (3, 2), (4, 3)]));
        assert_eq!(set(2), want(&[(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(
            vectors(&g.positive_roots(1).unwrap()),
            vec![(1, 0), (2, 1), (3, 2), (4, 3), (1, 1), (0, 1)]
        );
    }

    #[test]
    fn bad_axioms_detected() {
        let g = CartanGraph { cartan: vec![c(-2, -1), c(-1, -1)], r1: vec![1, 0], r2: vec![0, 1] };
        assert!(g.check_axioms().is_err());
    }

    #[test]
    fn infinite_alternation_capped() {
        let g = CartanGraph { cartan: vec![c(-3, -3)], r1: vec![0], r2: vec![0] };
        assert_eq!(g.positive_roots(0), Err(WeylError::InfiniteRoots(ROOT_CAP)));
    }

    fn p1_pair() -> PairState {
        let g = family("Gamma3").unwrap().build(&[2, 6]).unwrap();
        let f = Field::create(0, 6).unwrap();
        let z6 = f.zeta();
        let (gg, z, e) = (g.named("g").unwrap(), g.named("z").unwrap(), g.named("e").unwrap());
        let v = YDModule::induce(
            g.clone(),
            &CentralizerRep::character(gg, g.centralizer(gg).generators.clone(), vec![z6.pow(3), z6.pow(2)]),
            "v",
        )
        .unwrap();
        let ez = g.mul(e, z);
        let gens = g.centralizer(ez).generators.clone();
        let vals = gens.iter().map(|&s| if s == e { z6.pow(2) } else if s == z { z6.clone() } else { f.one() }).collect();
        let w = YDModule::induce(g.clone(), &CentralizerRep::character(ez, gens, vals), "w").unwrap();
        PairState::new(v, w).unwrap()
    }

    #[test]
    fn p1_groupoid() {
        let p = p1_pair();
        let cfg = ChainConfig::default();
        let s = generate(&p, &ClassLabel, &cfg, 8).unwrap();
        assert_eq!(s.objects.len(), 2);
        assert!(s.is_standard());
        s.check_axioms().unwrap();
        let roots = s.positive_roots(0).unwrap();
        let classes: Vec<YClass> = root_module_assignment(&p, &roots, &cfg).unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(classes, vec![YClass::Y1, YClass::Y4, YClass::Y1, YClass::Y8]);
        assert_eq!(path_string(&[1, 2]), "R₂R₁ image");
    }
}
