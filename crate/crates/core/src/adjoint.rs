//! Adjoint chains `X_m^{V,W} = φ_m(V ⊗ X_{m-1}^{V,W})`, Cartan entries,
//! reflections and the ℘-labels of pairs over Γ₃-images.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{Elem, Group};
use crate::linalg::{add_entry, sv_add_scaled, Matrix, SparseVec};
use crate::scalars::{quantum_integer, Field, Scalar};
use crate::ydmod::{Subspace, YDModule, YdError};

pub const DEFAULT_CHAIN_CAP: usize = 8;
pub const DEFAULT_DIMENSION_CAP: u64 = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdjointError {
    #[error(transparent)]
    Yd(#[from] YdError),
    #[error("X_{m} in direction {direction} is neither absolutely simple nor zero")]
    NotSimple { direction: u8, m: usize },
    #[error("adjoint chain in direction {direction} does not vanish up to m = {cap}")]
    Unbounded { direction: u8, cap: usize },
    #[error("tensor space of dimension {dim} at m = {m} exceeds the cap")]
    DimensionCap { direction: u8, m: usize, dim: u64 },
    #[error("reflection index must be 1 or 2")]
    BadIndex,
}

impl AdjointError {
    /// True for errors caused by a configured cap rather than by the mathematics.
    pub fn is_cap(&self) -> bool {
        matches!(self, AdjointError::Unbounded { .. } | AdjointError::DimensionCap { .. })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChainConfig {
    pub chain_cap: usize,
    pub dimension_cap: u64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig { chain_cap: DEFAULT_CHAIN_CAP, dimension_cap: DEFAULT_DIMENSION_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XStatus {
    Zero,
    AbsolutelySimple,
    Neither,
}

/// Evaluates `φ_m` on `V^{⊗m} ⊗ W`. Basis keys are mixed-radix codes with the
/// `W` index least significant, so the tail `V^{⊗k} ⊗ W` of a key is `key % size(k)`.
pub struct PhiEngine<'a> {
    v: &'a YDModule,
    w: &'a YDModule,
    group: Arc<Group>,
    field: Field,
    memo: HashMap<(usize, u64), SparseVec>,
}

impl<'a> PhiEngine<'a> {
    pub fn new(v: &'a YDModule, w: &'a YDModule) -> Self {
        PhiEngine { v, w, group: v.group().clone(), field: v.field(), memo: HashMap::new() }
    }

    /// `dim V^{⊗k} ⊗ W`.
    pub fn size(&self, k: usize) -> u64 {
        (self.v.dim() as u64).pow(k as u32) * self.w.dim() as u64
    }

    fn digits(&self, code: u64, k: usize) -> (Vec<usize>, usize) {
        let dv = self.v.dim() as u64;
        let dw = self.w.dim() as u64;
        let w = (code % dw) as usize;
        let mut rest = code / dw;
        let mut a = vec![0; k];
        for i in (0..k).rev() {
            a[i] = (rest % dv) as usize;
            rest /= dv;
        }
        (a, w)
    }

    pub fn degree(&self, code: u64, k: usize) -> Elem {
        let (a, w) = self.digits(code, k);
        let mut d = self.group.identity();
        for x in a {
            d = self.group.mul(d, self.v.degree(x));
        }
        self.group.mul(d, self.w.degree(w))
    }

    /// `h` acting diagonally on a basis tensor.
    pub fn act_basis(&self, h: Elem, code: u64, k: usize) -> SparseVec {
        let (a, w) = self.digits(code, k);
        let mut terms: Vec<(u64, Scalar)> = vec![(0, self.field.one())];
        for x in a {
            let col = self.v.act_basis(h, x);
            terms = terms
                .iter()
                .flat_map(|(acc, c)| col.iter().map(move |(r, y)| (acc * self.v.dim() as u64 + *r as u64, c * y)))
                .collect();
        }
        let col = self.w.act_basis(h, w);
        let mut out = SparseVec::new();
        for (acc, c) in &terms {
            for (r, y) in col {
                add_entry(&mut out, acc * self.w.dim() as u64 + *r as u64, &(c * y));
            }
        }
        out
    }

    pub fn act(&self, h: Elem, v: &SparseVec, k: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (code, c) in v {
            sv_add_scaled(&mut out, &self.act_basis(h, *code, k), c);
        }
        out
    }

    /// `φ_k` on the basis tensor `code ∈ V^{⊗k} ⊗ W`.
    pub fn phi_basis(&mut self, k: usize, code: u64) -> SparseVec {
        assert!(k >= 1);
        if let Some(r) = self.memo.get(&(k, code)) {
            return r.clone();
        }
        let tail = self.size(k - 1);
        let (a, t) = ((code / tail) as usize, code % tail);
        let h = self.v.degree(a);
        let d = self.degree(t, k - 1);
        let mut out = SparseVec::from([(code, self.field.one())]);
        // - c_{T,V} c_{V,T}(v_a ⊗ t) = -(h d h⁻¹ · v_a) ⊗ (h · t)
        let ht = self.act_basis(h, t, k - 1);
        let hd = self.group.conj(h, d);
        for (a2, x) in self.v.act_basis(hd, a).to_vec() {
            for (t2, y) in &ht {
                add_entry(&mut out, a2 as u64 * tail + t2, &-(&x * y));
            }
        }
        // + (id ⊗ φ_{k-1}) c_{1,2}: v_a ⊗ v_b ⊗ t'' ↦ (h·v_b) ⊗ φ_{k-1}(v_a ⊗ t'')
        if k >= 2 {
            let tail2 = self.size(k - 2);
            let (b, t2) = ((t / tail2) as usize, t % tail2);
            let inner = self.phi_basis(k - 1, a as u64 * tail2 + t2);
            for (b2, x) in self.v.act_basis(h, b).to_vec() {
                for (c, y) in &inner {
                    add_entry(&mut out, b2 as u64 * tail + c, &(&x * y));
                }
            }
        }
        self.memo.insert((k, code), out.clone());
        out
    }

    pub fn phi(&mut self, k: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (code, c) in v {
            let img = self.phi_basis(k, *code);
            sv_add_scaled(&mut out, &img, c);
        }
        out
    }

    /// Dense matrix of `φ_k` on `V^{⊗k} ⊗ W`.
    pub fn phi_matrix(&mut self, k: usize) -> Matrix {
        let n = self.size(k) as usize;
        let mut m = Matrix::zeros(self.field, n, n);
        for c in 0..n {
            for (r, x) in self.phi_basis(k, c as u64) {
                m[(r as usize, c)] = x;
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct ChainTerm {
    pub m: usize,
    pub module: YDModule,
    /// Basis of `X_m` inside `V^{⊗m} ⊗ W`.
    pub vectors: Vec<SparseVec>,
    pub status: XStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainEnd {
    Vanished { m: usize },
    /// `X_m` is nonzero but not absolutely simple; later terms are not computed.
    NotSimple { m: usize },
    Cap { m: usize },
    DimensionCap { m: usize, dim: u64 },
}

#[derive(Clone, Debug)]
pub struct AdjointChain {
    pub terms: Vec<ChainTerm>,
    pub end: ChainEnd,
}

fn status_of(module: &YDModule) -> Result<XStatus, YdError> {
    if module.is_zero() {
        Ok(XStatus::Zero)
    } else if module.is_absolutely_simple()? {
        Ok(XStatus::AbsolutelySimple)
    } else {
        Ok(XStatus::Neither)
    }
}

impl AdjointChain {
    /// `X_0 = W, X_1, …` until a term vanishes or a cap is hit.
    pub fn compute(v: &YDModule, w: &YDModule, cfg: &ChainConfig) -> Result<AdjointChain, AdjointError> {
        let mut engine = PhiEngine::new(v, w);
        let field = v.field();
        let group = v.group().clone();
        let mut terms = vec![ChainTerm {
            m: 0,
            module: w.clone(),
            vectors: (0..w.dim()).map(|i| SparseVec::from([(i as u64, field.one())])).collect(),
            status: status_of(w)?,
        }];
        let mut m = 1;
        let end = loop {
            if m > cfg.chain_cap {
                break ChainEnd::Cap { m: cfg.chain_cap };
            }
            let dim = engine.size(m);
            if dim > cfg.dimension_cap {
                break ChainEnd::DimensionCap { m, dim };
            }
            let prev = &terms[m - 1].vectors;
            let tail = engine.size(m - 1);
            let mut seeds = Vec::new();
            for a in 0..v.dim() as u64 {
                for x in prev {
                    let shifted: SparseVec = x.iter().map(|(k, c)| (a * tail + k, c.clone())).collect();
                    seeds.push(engine.phi(m, &shifted));
                }
            }
            let sub = Subspace::closure(field, seeds, |_| Vec::new(), |k| engine.degree(k, m));
            let module = sub.module(group.clone(), field, |h, x| engine.act(h, x, m))?;
            let status = status_of(&module)?;
            terms.push(ChainTerm { m, module, vectors: sub.basis.vectors.clone(), status });
            match status {
                XStatus::Zero => break ChainEnd::Vanished { m },
                XStatus::Neither => break ChainEnd::NotSimple { m },
                XStatus::AbsolutelySimple => {}
            }
            m += 1;
        };
        Ok(AdjointChain { terms, end })
    }

    pub fn term(&self, m: usize) -> Option<&ChainTerm> {
        self.terms.get(m)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.module.dim()).collect()
    }

    /// `-max{m : X_m ≠ 0}` when every nonzero term is absolutely simple.
    pub fn cartan_entry(&self, direction: u8) -> Result<i32, AdjointError> {
        match self.end {
            ChainEnd::Vanished { m } => {
                if let Some(t) = self.terms[1..m].iter().find(|t| t.status != XStatus::AbsolutelySimple) {
                    return Err(AdjointError::NotSimple { direction, m: t.m });
                }
                Ok(-(m as i32 - 1))
            }
            ChainEnd::NotSimple { m } => Err(AdjointError::NotSimple { direction, m }),
            ChainEnd::Cap { m } => Err(AdjointError::Unbounded { direction, cap: m }),
            ChainEnd::DimensionCap { m, dim } => Err(AdjointError::DimensionCap { direction, m, dim }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanMatrix {
    pub a12: i32,
    pub a21: i32,
}

impl CartanMatrix {
    pub fn entries(&self) -> [[i32; 2]; 2] {
        [[2, self.a12], [self.a21, 2]]
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries()[i][j]
    }

    pub fn is_valid(&self) -> bool {
        self.a12 <= 0 && self.a21 <= 0 && ((self.a12 == 0) == (self.a21 == 0))
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[2,{}],[{},2]]", self.a12, self.a21)
    }
}

/// Both adjoint chains of a pair.
#[derive(Clone, Debug)]
pub struct PairAnalysis {
    pub vw: AdjointChain,
    pub wv: AdjointChain,
}

impl PairAnalysis {
    pub fn cartan(&self) -> Result<CartanMatrix, AdjointError> {
        let a12 = self.vw.cartan_entry(1)?;
        let a21 = self.wv.cartan_entry(2)?;
        Ok(CartanMatrix { a12, a21 })
    }
}

/// An ordered pair `(V, W)` of modules over the same group and field.
#[derive(Clone, Debug)]
pub struct PairState {
    pub v: YDModule,
    pub w: YDModule,
}

impl PairState {
    pub fn new(v: YDModule, w: YDModule) -> Result<PairState, AdjointError> {
        if !Arc::ptr_eq(v.group(), w.group()) || v.field() != w.field() {
            return Err(YdError::Mismatch.into());
        }
        Ok(PairState { v, w })
    }

    pub fn group(&self) -> &Arc<Group> {
        self.v.group()
    }

    pub fn field(&self) -> Field {
        self.v.field()
    }

    pub fn entry(&self, i: usize) -> &YDModule {
        if i == 1 {
            &self.v
        } else {
            &self.w
        }
    }

    pub fn analyze(&self, cfg: &ChainConfig) -> Result<PairAnalysis, AdjointError> {
        Ok(PairAnalysis {
            vw: AdjointChain::compute(&self.v, &self.w, cfg)?,
            wv: AdjointChain::compute(&self.w, &self.v, cfg)?,
        })
    }

    /// `c_{W,V} c_{V,W} = id`.
    pub fn braiding_square_is_identity(&self) -> bool {
        let c = self.v.braiding(&self.w).expect("same base");
        let c2 = self.w.braiding(&self.v).expect("same base");
        c2.mul(&c).is_identity()
    }

    /// `R₁(V,W) = (V*, X_{-a₁₂}^{V,W})`, `R₂(V,W) = (X_{-a₂₁}^{W,V}, W*)`.
    pub fn reflect_with(&self, i: usize, analysis: &PairAnalysis) -> Result<PairState, AdjointError> {
        match i {
            1 => {
                let m = (-analysis.vw.cartan_entry(1)?) as usize;
                let x = analysis.vw.terms[m].module.clone();
                PairState::new(self.v.dual(), x)
            }
            2 => {
                let m = (-analysis.wv.cartan_entry(2)?) as usize;
                let x = analysis.wv.terms[m].module.clone();
                PairState::new(x, self.w.dual())
            }
            _ => Err(AdjointError::BadIndex),
        }
    }

    pub fn reflect(&self, i: usize, cfg: &ChainConfig) -> Result<PairState, AdjointError> {
        let analysis = self.analyze(cfg)?;
        self.reflect_with(i, &analysis)
    }

    /// Componentwise graded intertwiners, if the pairs are isomorphic.
    pub fn find_isomorphism(&self, o: &PairState) -> Option<(Matrix, Matrix)> {
        Some((self.v.find_isomorphism(&o.v)?, self.w.find_isomorphism(&o.w)?))
    }

    pub fn is_isomorphic(&self, o: &PairState) -> bool {
        self.find_isomorphism(o).is_some()
    }
}

// ---------------------------------------------------------------- ℘ labels

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairLabel {
    P1,
    P2,
    P3,
    P4,
    P5,
    P5Prime,
    P5Second,
    P6,
    Unclassified,
}

impl PairLabel {
    pub const ALL: [PairLabel; 8] = [
        PairLabel::P1,
        PairLabel::P2,
        PairLabel::P3,
        PairLabel::P4,
        PairLabel::P5,
        PairLabel::P5Prime,
        PairLabel::P5Second,
        PairLabel::P6,
    ];

    pub fn ascii(&self) -> &'static str {
        match self {
            PairLabel::P1 => "P1",
            PairLabel::P2 => "P2",
            PairLabel::P3 => "P3",
            PairLabel::P4 => "P4",
            PairLabel::P5 => "P5",
            PairLabel::P5Prime => "P5'",
            PairLabel::P5Second => "P5''",
            PairLabel::P6 => "P6",
            PairLabel::Unclassified => "unclassified",
        }
    }

    pub fn parse(s: &str) -> Option<PairLabel> {
        PairLabel::ALL.into_iter().chain([PairLabel::Unclassified]).find(|l| l.ascii() == s || l.to_string() == s)
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairLabel::P1 => "℘₁",
            PairLabel::P2 => "℘₂",
            PairLabel::P3 => "℘₃",
            PairLabel::P4 => "℘₄",
            PairLabel::P5 => "℘₅",
            PairLabel::P5Prime => "℘₅′",
            PairLabel::P5Second => "℘₅″",
            PairLabel::P6 => "℘₆",
            PairLabel::Unclassified => "unclassified",
        };
        f.write_str(s)
    }
}

/// Images `(g, ε, z)` of the generators of Γ₃ under an epimorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma3Frame {
    pub g: Elem,
    pub e: Elem,
    pub z: Elem,
}

impl Gamma3Frame {
    pub fn is_epimorphism(&self, group: &Group) -> bool {
        let inv_e = group.inv(self.e);
        self.e != group.identity()
            && group.pow(self.e, 3) == group.identity()
            && group.conj(self.g, self.e) == inv_e
            && group.is_central(self.z)
            && group.generated(&[self.g, self.e, self.z]).len() == group.order()
    }
}

/// The two candidates for the image of ν: the nontrivial elements of the
/// commutator subgroup of a Γ₃-image.
pub fn epsilon_candidates(group: &Group) -> Vec<Elem> {
    match group.named("e") {
        Some(e) if group.spec().family == "Gamma3" => vec![e, group.inv(e)],
        _ => Vec::new(),
    }
}

pub(crate) fn q3_zero(x: &Scalar) -> bool {
    quantum_integer(3, x).is_zero()
}

/// Character values read off a pair for one frame.
struct PairValues<'a> {
    pair: &'a PairState,
    frame: Gamma3Frame,
    w_degree: Elem,
}

impl PairValues<'_> {
    fn rho(&self, x: Elem) -> Scalar {
        self.pair.v.character_value(self.frame.g, x).expect("one-dimensional component")
    }
    fn sigma(&self, x: Elem) -> Option<Scalar> {
        let m = self.pair.w.component_action(self.w_degree, x);
        m.as_scalar()
    }
}

/// All frames under which `V ≅ M(g, ρ)` and `W ≅ M(εz, σ)` or `M(z, σ)`.
pub fn pair_frames(pair: &PairState) -> Vec<(Gamma3Frame, Elem)> {
    let group = pair.group();
    let mut out = Vec::new();
    let sv = pair.v.support();
    let sw = pair.w.support();
    if sv.len() != 3 || !(sw.len() == 1 || sw.len() == 2) {
        return out;
    }
    for &e in &epsilon_candidates(group) {
        for &g in &sv {
            for &d in &sw {
                let z = if sw.len() == 2 { group.mul(group.inv(e), d) } else { d };
                let frame = Gamma3Frame { g, e, z };
                if frame.is_epimorphism(group) {
                    out.push((frame, d));
                }
            }
        }
    }
    out
}

/// The ℘-labels whose conditions hold for some frame, in canonical order.
pub fn matching_labels(pair: &PairState) -> Vec<PairLabel> {
    let group = pair.group().clone();
    let field = pair.field();
    let p = field.characteristic();
    let one = field.one();
    let minus_one = -&one;
    let simple = matches!(pair.v.is_absolutely_simple(), Ok(true)) && matches!(pair.w.is_absolutely_simple(), Ok(true));
    if !simple {
        return Vec::new();
    }
    let mut found = Vec::new();
    for (frame, d) in pair_frames(pair) {
        let vals = PairValues { pair, frame, w_degree: d };
        let Gamma3Frame { g, e, z } = frame;
        let gz = group.mul(g, z);
        let g2 = group.mul(g, g);
        let rho_g = vals.rho(g);
        let rho_z = vals.rho(z);
        let rz2 = &rho_z * &rho_z;
        let w_dim = pair.w.dim();
        if pair.w.support().len() == 2 {
            let (Some(s_e), Some(s_z), Some(s_g2)) = (vals.sigma(e), vals.sigma(z), vals.sigma(g2)) else { continue };
            let s_ez = &s_e * &s_z;
            let key = &(&rz2 * &s_e) * &s_g2;
            if rho_g == minus_one && s_ez == minus_one && key.is_one() && q3_zero(&s_e) {
                found.push(PairLabel::P1);
            }
            if p != 3 && rho_g == minus_one && s_z == minus_one && key.is_one() && s_e.is_one() {
                found.push(PairLabel::P2);
            }
            if p == 2 && q3_zero(&s_e) && s_z == s_e && key.is_one() && rho_g.is_one() {
                found.push(PairLabel::P5Prime);
            }
        } else {
            let (Some(s_z), Some(s_g2)) = (vals.sigma(z), vals.sigma(g2)) else { continue };
            if w_dim == 2 {
                if p != 3 && rho_g == minus_one && s_z == minus_one && (&rz2 * &s_g2).is_one() {
                    found.push(PairLabel::P3);
                }
                continue;
            }
            let Some(s_g) = vals.sigma(g) else { continue };
            let rs = &rho_z * &s_g;
            if rho_g == minus_one && (&rs * &s_z).is_one() && q3_zero(&-&rs) {
                found.push(PairLabel::P4);
            }
            if p == 2 && rho_g.is_one() && s_z.is_one() && q3_zero(&rs) {
                found.push(PairLabel::P5);
            }
            if p == 2 && q3_zero(&rho_g) && s_z.is_one() && (&vals.rho(gz) * &s_g).is_one() {
                found.push(PairLabel::P5Second);
            }
            if p != 2 && p != 3 && rho_g == minus_one && s_z == minus_one && q3_zero(&-&rs) {
                found.push(PairLabel::P6);
            }
        }
    }
    found.sort();
    found.dedup();
    found
}

pub fn classify_pair(pair: &PairState) -> PairLabel {
    matching_labels(pair).first().copied().unwrap_or(PairLabel::Unclassified)
}

/// One step of a reflection trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRecord {
    pub word: String,
    pub label: String,
    pub cartan: Option<CartanMatrix>,
    pub dims: [usize; 2],
    pub error: Option<String>,
}

/// Applies `R_{i_1}`, then `R_{i_2}`, …, recording labels and Cartan matrices.
pub fn reflection_trace(pair: &PairState, word: &[usize], cfg: &ChainConfig) -> Vec<TraceRecord> {
    let mut out = Vec::new();
    let mut cur = pair.clone();
    let mut w = String::new();
    for k in 0..=word.len() {
        let analysis = cur.analyze(cfg);
        let cartan = analysis.as_ref().ok().and_then(|a| a.cartan().ok());
        let error = match &analysis {
            Err(e) => Some(e.to_string()),
            Ok(a) => a.cartan().err().map(|e| e.to_string()),
        };
        out.push(TraceRecord {
            word: if w.is_empty() { "id".into() } else { w.clone() },
            label: classify_pair(&cur).to_string(),
            cartan,
            dims: [cur.v.dim(), cur.w.dim()],
            error: error.clone(),
        });
        if k == word.len() || error.is_some() {
            break;
        }
        let i = word[k];
        match cur.reflect_with(i, analysis.as_ref().expect("checked")) {
            Ok(next) => cur = next,
            Err(e) => {
                out.last_mut().expect("nonempty").error = Some(e.to_string());
                break;
            }
        }
        w = format!("R{i}{}{w}", if w.is_empty() { "" } else { " " });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::family;
    use crate::ydmod::CentralizerRep;

    fn group() -> (Arc<Group>, Field) {
        (family("Gamma3").unwrap().build(&[2, 6]).unwrap(), Field::create(0, 6).unwrap())
    }

    // ζ = zeta_6; values are powers of ζ
    fn p1_pair(g: &Arc<Group>, f: Field) -> PairState {
        let z6 = f.zeta();
        let (gg, z, e) = (g.named("g").unwrap(), g.named("z").unwrap(), g.named("e").unwrap());
        // ρ(g) = -1, ρ(z) = ζ; σ(ε) = ζ^2 (so (3)_{σ(ε)} = 0), σ(z) = -σ(ε)⁻¹ = ζ, σ(g²)=1
        // check ρ(z)²σ(ε) = ζ^4 ≠ 1, so pick ρ(z) = ζ^2: ρ(z)^2 σ(ε) = ζ^6 = 1
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
    fn p1_chain_and_cartan() {
        let (g, f) = group();
        assert_eq!(g.centralizer(g.named("g").unwrap()).generators, vec![g.named("g").unwrap(), g.named("z").unwrap()]);
        let p = p1_pair(&g, f);
        assert_eq!(classify_pair(&p), PairLabel::P1);
        let a = p.analyze(&ChainConfig::default()).unwrap();
        assert_eq!(a.vw.dims(), vec![2, 3, 1, 0]);
        assert_eq!(a.cartan().unwrap(), CartanMatrix { a12: -2, a21: -1 });
        assert_eq!(classify_pair(&p.reflect_with(1, &a).unwrap()), PairLabel::P4);
        assert_eq!(classify_pair(&p.reflect_with(2, &a).unwrap()), PairLabel::P1);
    }

    #[test]
    fn phi_one_formula() {
        // φ₁(ε²v ⊗ w) = ε²v ⊗ w − ρ(z)σ(ε)² εv ⊗ gw
        let (g, f) = group();
        let p = p1_pair(&g, f);
        let mut eng = PhiEngine::new(&p.v, &p.w);
        let m = eng.phi_matrix(1);
        let idx = |vl: &str, wl: &str| {
            let a = p.v.labels().iter().position(|l| l == vl).unwrap();
            let b = p.w.labels().iter().position(|l| l == wl).unwrap();
            a * p.w.dim() + b
        };
        let col = idx("e^2 v", "w");
        let z6 = f.zeta();
        assert!(m[(col, col)].is_one());
        // ρ(z)σ(ε)² = ζ² ζ⁴ = 1
        assert_eq!(m[(idx("e v", "g w"), col)], -&(&z6.pow(2) * &z6.pow(4)));
    }

    #[test]
    fn trivial_braiding_gives_zero_chain() {
        let (g, f) = group();
        let z = g.named("z").unwrap();
        let gens = g.centralizer(z).generators.clone();
        let ones: Vec<Scalar> = gens.iter().map(|_| f.one()).collect();
        let w = YDModule::induce(g.clone(), &CentralizerRep::character(z, gens.clone(), ones.clone()), "w").unwrap();
        let v = YDModule::induce(g.clone(), &CentralizerRep::character(z, gens, ones), "v").unwrap();
        let p = PairState::new(v, w).unwrap();
        assert!(p.braiding_square_is_identity());
        let a = p.analyze(&ChainConfig::default()).unwrap();
        assert_eq!(a.cartan().unwrap(), CartanMatrix { a12: 0, a21: 0 });
        assert!(PhiEngine::new(&p.v, &p.w).phi_matrix(1).is_zero());
    }

    #[test]
    fn reflections_are_involutions() {
        let (g, f) = group();
        let p = p1_pair(&g, f);
        let cfg = ChainConfig::default();
        for i in [1, 2] {
            let back = p.reflect(i, &cfg).unwrap().reflect(i, &cfg).unwrap();
            assert!(back.is_isomorphic(&p));
        }
    }
}
