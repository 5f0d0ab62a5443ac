//! Yetter-Drinfeld modules over a tabulated group: induced modules, sums,
//! tensor products, duals, braidings and absolute simplicity.

use std::sync::Arc;

use thiserror::Error;

use crate::groups::{Elem, Group};
use crate::linalg::{add_entry, Matrix, ReducedBasis, SparseEchelon, SparseVec};
use crate::scalars::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YdError {
    #[error("representation is not well defined: {0}")]
    NotWellDefined(String),
    #[error("generators do not generate the centralizer of {0}")]
    NotCentralizer(String),
    #[error("action is not Yetter-Drinfeld compatible at basis vector {0}")]
    NotCompatible(usize),
    #[error("modules live over different groups or fields")]
    Mismatch,
    #[error("zero module")]
    ZeroModule,
    #[error("vector does not lie in the module")]
    NotInModule,
}

/// A finite-dimensional representation of a centralizer `G^x`, given on generators.
#[derive(Clone, Debug)]
pub struct CentralizerRep {
    pub x: Elem,
    pub generators: Vec<Elem>,
    pub images: Vec<Matrix>,
}

impl CentralizerRep {
    /// A character: one scalar per generator.
    pub fn character(x: Elem, generators: Vec<Elem>, values: Vec<Scalar>) -> Self {
        let images = values.iter().map(|v| Matrix::scalar(v.field(), 1, v)).collect();
        CentralizerRep { x, generators, images }
    }

    pub fn degree(&self) -> usize {
        self.images.first().map_or(0, |m| m.rows())
    }

    /// Extends the generator images to every element of the generated subgroup.
    pub fn extend(&self, group: &Group) -> Result<Vec<Option<Matrix>>, YdError> {
        let field = self.images.first().map(|m| m.field()).ok_or(YdError::ZeroModule)?;
        extend_to_subgroup(group, field, self.degree(), &self.generators, &self.images)
    }
}

/// BFS extension of `s ↦ images[s]` to the generated subgroup, checking every relation met.
fn extend_to_subgroup(
    group: &Group,
    field: Field,
    dim: usize,
    gens: &[Elem],
    images: &[Matrix],
) -> Result<Vec<Option<Matrix>>, YdError> {
    let mut mats: Vec<Option<Matrix>> = vec![None; group.order()];
    mats[group.identity()] = Some(Matrix::identity(field, dim));
    let mut queue = vec![group.identity()];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        let my = mats[y].clone().expect("visited");
        for (s, ms) in gens.iter().zip(images) {
            let p = group.mul(*s, y);
            let mp = ms.mul(&my);
            match &mats[p] {
                Some(old) if *old != mp => {
                    return Err(YdError::NotWellDefined(format!(
                        "two words for {} act differently",
                        group.format(p)
                    )))
                }
                Some(_) => {}
                None => {
                    mats[p] = Some(mp);
                    queue.push(p);
                }
            }
        }
    }
    Ok(mats)
}

#[derive(Clone)]
pub struct YDModule {
    group: Arc<Group>,
    field: Field,
    labels: Vec<String>,
    degrees: Vec<Elem>,
    action: Vec<Matrix>,
    sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl std::fmt::Debug for YDModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|d| self.group.format(*d)).collect();
        write!(f, "YDModule(dim {}, degrees [{}])", self.dim(), degs.join(", "))
    }
}

impl YDModule {
    /// Builds a module from the images of the group generators, in the
    /// group's generator order; checks relations and YD compatibility.
    pub fn from_generator_images(
        group: Arc<Group>,
        field: Field,
        labels: Vec<String>,
        degrees: Vec<Elem>,
        images: Vec<Matrix>,
    ) -> Result<YDModule, YdError> {
        let dim = degrees.len();
        let gens = group.generator_elems();
        let mats = extend_to_subgroup(&group, field, dim, &gens, &images)?;
        let action: Vec<Matrix> = mats.into_iter().map(|m| m.expect("generators generate the group")).collect();
        let m = YDModule::from_action(group, field, labels, degrees, action);
        m.check_compatible()?;
        Ok(m)
    }

    fn from_action(
        group: Arc<Group>,
        field: Field,
        labels: Vec<String>,
        degrees: Vec<Elem>,
        action: Vec<Matrix>,
    ) -> YDModule {
        let dim = degrees.len();
        let sparse = action
            .iter()
            .map(|m| {
                (0..dim)
                    .map(|c| (0..dim).filter(|&r| !m[(r, c)].is_zero()).map(|r| (r, m[(r, c)].clone())).collect())
                    .collect()
            })
            .collect();
        YDModule { group, field, labels, degrees, action, sparse }
    }

    pub fn zero(group: Arc<Group>, field: Field) -> YDModule {
        let n = group.order();
        YDModule::from_action(group, field, vec![], vec![], vec![Matrix::zeros(field, 0, 0); n])
    }

    /// `M(x, τ)`: basis is (coset representative) × (τ basis), representatives
    /// found by BFS over the group generators.
    pub fn induce(group: Arc<Group>, rep: &CentralizerRep, name: &str) -> Result<YDModule, YdError> {
        let x = rep.x;
        let field = rep.images.first().map(|m| m.field()).ok_or(YdError::ZeroModule)?;
        let d = rep.degree();
        let tau = rep.extend(&group)?;
        let centralizer = group.centralizer(x);
        let covered = tau.iter().filter(|m| m.is_some()).count();
        if covered != centralizer.order() || (0..group.order()).any(|y| tau[y].is_some() && !centralizer.contains(y)) {
            return Err(YdError::NotCentralizer(group.format(x)));
        }
        // coset representatives r with r x r⁻¹ distinct
        let mut reps = vec![group.identity()];
        let mut conj = vec![x];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for s in group.generator_elems() {
                let p = group.mul(s, r);
                let c = group.conj(p, x);
                if !conj.contains(&c) {
                    reps.push(p);
                    conj.push(c);
                }
            }
        }
        let k = reps.len();
        let dim = k * d;
        let mut labels = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        for (r, c) in reps.iter().zip(&conj) {
            for b in 0..d {
                let base = if d == 1 { name.to_string() } else { format!("{name}{}", b + 1) };
                labels.push(if *r == group.identity() { base } else { format!("{} {}", group.format(*r), base) });
                degrees.push(*c);
            }
        }
        let mut action = Vec::with_capacity(group.order());
        for h in 0..group.order() {
            let mut m = Matrix::zeros(field, dim, dim);
            for (i, r) in reps.iter().enumerate() {
                let hr = group.mul(h, *r);
                let target = group.conj(hr, x);
                let j = conj.iter().position(|c| *c == target).expect("conjugate of x");
                let c = group.mul(group.inv(reps[j]), hr);
                let t = tau[c].as_ref().expect("coset element lies in the centralizer");
                for a in 0..d {
                    for b in 0..d {
                        m[(j * d + a, i * d + b)] = t[(a, b)].clone();
                    }
                }
            }
            action.push(m);
        }
        let module = YDModule::from_action(group, field, labels, degrees, action);
        module.check_compatible()?;
        Ok(module)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> Elem {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Elem] {
        &self.degrees
    }

    pub fn action(&self, h: Elem) -> &Matrix {
        &self.action[h]
    }

    /// Column `i` of the action of `h` as sparse entries.
    pub fn act_basis(&self, h: Elem, i: usize) -> &[(usize, Scalar)] {
        &self.sparse[h][i]
    }

    fn same_base(&self, o: &YDModule) -> Result<(), YdError> {
        if Arc::ptr_eq(&self.group, &o.group) && self.field == o.field {
            Ok(())
        } else {
            Err(YdError::Mismatch)
        }
    }

    /// Distinct degrees in basis order.
    pub fn support(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for d in &self.degrees {
            if !out.contains(d) {
                out.push(*d);
            }
        }
        out
    }

    pub fn component(&self, x: Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == x).collect()
    }

    /// Action of `h ∈ G^x` on the homogeneous component of degree `x`.
    pub fn component_action(&self, x: Elem, h: Elem) -> Matrix {
        let idx = self.component(x);
        let m = &self.action[h];
        let rows = idx.iter().map(|&r| idx.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
        Matrix::from_rows(self.field, rows)
    }

    /// The scalar by which `h` acts on the one-dimensional component of degree `x`.
    pub fn character_value(&self, x: Elem, h: Elem) -> Option<Scalar> {
        let m = self.component_action(x, h);
        (m.rows() == 1).then(|| m[(0, 0)].clone())
    }

    pub fn check_compatible(&self) -> Result<(), YdError> {
        for h in self.group.generator_elems() {
            for j in 0..self.dim() {
                let want = self.group.conj(h, self.degrees[j]);
                if self.sparse[h][j].iter().any(|(r, _)| self.degrees[*r] != want) {
                    return Err(YdError::NotCompatible(j));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &YDModule) -> Result<YDModule, YdError> {
        self.same_base(o)?;
        let labels = self.labels.iter().chain(&o.labels).cloned().collect();
        let degrees = self.degrees.iter().chain(&o.degrees).copied().collect();
        let action = self.action.iter().zip(&o.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(YDModule::from_action(self.group.clone(), self.field, labels, degrees, action))
    }

    /// Tensor product, row-major basis (left factor slow).
    pub fn tensor(&self, o: &YDModule) -> Result<YDModule, YdError> {
        self.same_base(o)?;
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        for i in 0..self.dim() {
            for j in 0..o.dim() {
                labels.push(format!("{}⊗{}", self.labels[i], o.labels[j]));
                degrees.push(self.group.mul(self.degrees[i], o.degrees[j]));
            }
        }
        let action = self.action.iter().zip(&o.action).map(|(a, b)| a.kron(b)).collect();
        Ok(YDModule::from_action(self.group.clone(), self.field, labels, degrees, action))
    }

    /// Dual module: `deg f_i = (deg b_i)⁻¹`, `(h·f)(v) = f(h⁻¹ v)`.
    pub fn dual(&self) -> YDModule {
        let labels = self.labels.iter().map(|l| format!("({l})*")).collect();
        let degrees = self.degrees.iter().map(|d| self.group.inv(*d)).collect();
        let action = (0..self.group.order()).map(|h| self.action[self.group.inv(h)].transpose()).collect();
        YDModule::from_action(self.group.clone(), self.field, labels, degrees, action)
    }

    /// Matrix of `c_{V,W}: v ⊗ w ↦ (deg v)·w ⊗ v` from `V⊗W` to `W⊗V`.
    pub fn braiding(&self, o: &YDModule) -> Result<Matrix, YdError> {
        self.same_base(o)?;
        let (n, m) = (self.dim(), o.dim());
        let mut c = Matrix::zeros(self.field, m * n, n * m);
        for i in 0..n {
            for j in 0..m {
                for (k, x) in o.act_basis(self.degrees[i], j) {
                    c[(k * n + i, i * m + j)] = x.clone();
                }
            }
        }
        Ok(c)
    }

    /// Grading-preserving intertwiners `self → o`.
    pub fn hom_space(&self, o: &YDModule) -> Result<Vec<Matrix>, YdError> {
        self.same_base(o)?;
        let (n, m) = (self.dim(), o.dim());
        // unknowns F[r][c] with deg o_r = deg self_c
        let unknowns: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| o.degrees[r] == self.degrees[c])
            .collect();
        if unknowns.is_empty() {
            return Ok(Vec::new());
        }
        let pos = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for s in self.group.generator_elems() {
            let (a, b) = (&o.action[s], &self.action[s]);
            // (A F - F B)[r][c] = 0
            for r in 0..m {
                for c in 0..n {
                    let mut eq = vec![self.field.zero(); unknowns.len()];
                    for k in 0..m {
                        if let Some(p) = pos(k, c) {
                            eq[p] = &eq[p] + &a[(r, k)];
                        }
                    }
                    for k in 0..n {
                        if let Some(p) = pos(r, k) {
                            eq[p] = &eq[p] - &b[(k, c)];
                        }
                    }
                    if eq.iter().any(|x| !x.is_zero()) {
                        rows.push(eq);
                    }
                }
            }
        }
        let ns = if rows.is_empty() {
            (0..unknowns.len())
                .map(|i| (0..unknowns.len()).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect())
                .collect()
        } else {
            Matrix::from_rows(self.field, rows).nullspace()
        };
        Ok(ns
            .into_iter()
            .map(|v| {
                let mut f = Matrix::zeros(self.field, m, n);
                for (x, (r, c)) in v.into_iter().zip(&unknowns) {
                    f[(*r, *c)] = x;
                }
                f
            })
            .collect())
    }

    pub fn commutant_dim(&self) -> usize {
        self.hom_space(self).map(|h| h.len()).unwrap_or(0)
    }

    /// An invertible intertwiner `self → o`, if one exists.
    pub fn find_isomorphism(&self, o: &YDModule) -> Option<Matrix> {
        if self.dim() != o.dim() || self.same_base(o).is_err() {
            return None;
        }
        if self.dim() == 0 {
            return Some(Matrix::zeros(self.field, 0, 0));
        }
        let mut sd: Vec<Elem> = self.degrees.clone();
        let mut od: Vec<Elem> = o.degrees.clone();
        sd.sort();
        od.sort();
        if sd != od {
            return None;
        }
        let hom = self.hom_space(o).ok()?;
        if hom.is_empty() {
            return None;
        }
        for b in &hom {
            if b.inverse().is_some() {
                return Some(b.clone());
            }
        }
        // small deterministic combinations
        for seed in 1..40i64 {
            let mut f = Matrix::zeros(self.field, o.dim(), self.dim());
            for (k, b) in hom.iter().enumerate() {
                let c = ((seed * (k as i64 + 3) * 7919) % 11) - 5;
                f = f.add(&b.scale(&self.field.from_i64(c)));
            }
            if f.inverse().is_some() {
                return Some(f);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, o: &YDModule) -> bool {
        self.find_isomorphism(o).is_some()
    }

    /// Absolutely simple: the support is one conjugacy class and the action of
    /// the centralizer on one homogeneous component spans its full matrix algebra.
    pub fn is_absolutely_simple(&self) -> Result<bool, YdError> {
        if self.is_zero() {
            return Err(YdError::ZeroModule);
        }
        let x = self.degrees[0];
        let class = self.group.conjugacy_class(x);
        let supp = self.support();
        if supp.len() != class.len() || supp.iter().any(|d| !class.contains(d)) {
            return Ok(false);
        }
        let k = self.component(x).len();
        let cent = self.group.centralizer(x);
        let mut span = SparseEchelon::new();
        for &h in &cent.elements {
            let m = self.component_action(x, h);
            let mut v = SparseVec::new();
            for r in 0..k {
                for c in 0..k {
                    add_entry(&mut v, (r * k + c) as u64, &m[(r, c)]);
                }
            }
            span.insert(v);
            if span.rank() == k * k {
                return Ok(true);
            }
        }
        Ok(span.rank() == k * k)
    }

    /// Submodule generated by `vectors`, with a homogeneous reduced basis.
    /// Returns the module and the inclusion matrix (columns are basis vectors).
    pub fn submodule_generated(&self, vectors: &[Vec<Scalar>]) -> Result<(YDModule, Matrix), YdError> {
        let sparse: Vec<SparseVec> = vectors
            .iter()
            .map(|v| {
                if v.len() != self.dim() {
                    return Err(YdError::NotInModule);
                }
                let mut s = SparseVec::new();
                for (i, x) in v.iter().enumerate() {
                    add_entry(&mut s, i as u64, x);
                }
                Ok(s)
            })
            .collect::<Result<_, _>>()?;
        let gens = self.group.generator_elems();
        let dim = self.dim();
        let sub = Subspace::closure(self.field, sparse, |v| {
            gens.iter().map(|&s| self.act_vec(s, v)).collect()
        }, |k| self.degrees[k as usize]);
        let module = sub.module(self.group.clone(), self.field, |s, v| self.act_vec(s, v))?;
        let mut inc = Matrix::zeros(self.field, dim, module.dim());
        for (c, v) in sub.basis.vectors.iter().enumerate() {
            for (r, x) in v {
                inc[(*r as usize, c)] = x.clone();
            }
        }
        Ok((module, inc))
    }

    pub fn act_vec(&self, h: Elem, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in v {
            for (r, y) in self.act_basis(h, *i as usize) {
                add_entry(&mut out, *r as u64, &(x * y));
            }
        }
        out
    }

    /// Relabels basis vectors.
    pub fn with_labels(mut self, labels: Vec<String>) -> YDModule {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }
}

/// Homogeneous subspace of some ambient space with a degree function on basis keys.
pub struct Subspace {
    pub basis: ReducedBasis,
    pub degrees: Vec<Elem>,
}

impl Subspace {
    /// Span of `seeds` (split into homogeneous parts), optionally closed under `step`.
    pub fn closure(
        field: Field,
        seeds: Vec<SparseVec>,
        step: impl Fn(&SparseVec) -> Vec<SparseVec>,
        degree_of: impl Fn(u64) -> Elem,
    ) -> Subspace {
        let mut blocks: Vec<(Elem, SparseEchelon)> = Vec::new();
        let mut queue: Vec<SparseVec> = Vec::new();
        let split = |v: &SparseVec| -> Vec<(Elem, SparseVec)> {
            let mut parts: Vec<(Elem, SparseVec)> = Vec::new();
            for (k, x) in v {
                let d = degree_of(*k);
                match parts.iter_mut().find(|(e, _)| *e == d) {
                    Some((_, p)) => {
                        p.insert(*k, x.clone());
                    }
                    None => parts.push((d, SparseVec::from([(*k, x.clone())]))),
                }
            }
            parts
        };
        let push = |v: &SparseVec, blocks: &mut Vec<(Elem, SparseEchelon)>, queue: &mut Vec<SparseVec>| {
            for (d, part) in split(v) {
                let idx = match blocks.iter().position(|(e, _)| *e == d) {
                    Some(i) => i,
                    None => {
                        blocks.push((d, SparseEchelon::new()));
                        blocks.len() - 1
                    }
                };
                if blocks[idx].1.insert(part.clone()) {
                    queue.push(part);
                }
            }
        };
        for s in &seeds {
            push(s, &mut blocks, &mut queue);
        }
        while let Some(v) = queue.pop() {
            for w in step(&v) {
                push(&w, &mut blocks, &mut queue);
            }
        }
        let _ = field;
        let mut vectors = Vec::new();
        let mut pivots = Vec::new();
        let mut degrees = Vec::new();
        for (d, e) in &blocks {
            let rb = ReducedBasis::from_echelon(e);
            for (v, p) in rb.vectors.into_iter().zip(rb.pivots) {
                vectors.push(v);
                pivots.push(p);
                degrees.push(*d);
            }
        }
        Subspace { basis: ReducedBasis { vectors, pivots }, degrees }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The subspace as a module, given the ambient action on vectors.
    pub fn module(
        &self,
        group: Arc<Group>,
        field: Field,
        act: impl Fn(Elem, &SparseVec) -> SparseVec,
    ) -> Result<YDModule, YdError> {
        let n = self.dim();
        if n == 0 {
            return Ok(YDModule::zero(group, field));
        }
        let mut images = Vec::new();
        for s in group.generator_elems() {
            let mut m = Matrix::zeros(field, n, n);
            for (c, v) in self.basis.vectors.iter().enumerate() {
                let img = act(s, v);
                let coords = self.basis.coordinates(&img, field).ok_or(YdError::NotInModule)?;
                for (r, x) in coords.into_iter().enumerate() {
                    m[(r, c)] = x;
                }
            }
            images.push(m);
        }
        let labels = (0..n).map(|i| format!("b{}", i + 1)).collect();
        YDModule::from_generator_images(group, field, labels, self.degrees.clone(), images)
    }
}

/// `U = V ⊕ W` with the braiding `c(u ⊗ u') = (deg u)·u' ⊗ u`; the first
/// `split` basis vectors come from `V`.
#[derive(Clone, Debug)]
pub struct BraidedSpace {
    pub module: YDModule,
    pub split: usize,
}

impl BraidedSpace {
    pub fn from_pair(v: &YDModule, w: &YDModule) -> Result<Self, YdError> {
        Ok(BraidedSpace { module: v.direct_sum(w)?, split: v.dim() })
    }

    pub fn single(v: &YDModule) -> Self {
        BraidedSpace { module: v.clone(), split: v.dim() }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Applies `c` at positions `(k, k+1)` of `U^{⊗n}`; keys are base-`dim` digits, most significant first.
    pub fn braid_at(&self, n: usize, k: usize, v: &SparseVec) -> SparseVec {
        let d = self.dim() as u64;
        let hi = d.pow((n - k - 1) as u32);
        let lo = d.pow((n - k - 2) as u32);
        let mut out = SparseVec::new();
        for (key, x) in v {
            let a = (key / hi) % d;
            let b = (key / lo) % d;
            let rest = key - a * hi - b * lo;
            let h = self.module.degree(a as usize);
            for (b2, y) in self.module.act_basis(h, b as usize) {
                add_entry(&mut out, rest + (*b2 as u64) * hi + a * lo, &(x * y));
            }
        }
        out
    }

    /// The braid equation on every basis vector of `U^{⊗3}`.
    pub fn braid_equation_holds(&self) -> bool {
        let d = self.dim() as u64;
        let f = self.module.field();
        (0..d * d * d).all(|key| {
            let e = SparseVec::from([(key, f.one())]);
            let lhs = self.braid_at(3, 0, &self.braid_at(3, 1, &self.braid_at(3, 0, &e)));
            let rhs = self.braid_at(3, 1, &self.braid_at(3, 0, &self.braid_at(3, 1, &e)));
            lhs == rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::family;
    use crate::scalars::roots_of_unity;

    fn setup() -> (Arc<Group>, Field) {
        (family("Gamma3").unwrap().build(&[4, 6]).unwrap(), Field::create(0, 12).unwrap())
    }

    fn m_g(g: &Arc<Group>, f: Field, rg: i64, rz: i64) -> YDModule {
        let x = g.named("g").unwrap();
        let z = f.zeta();
        let rep = CentralizerRep::character(x, vec![x, g.named("z").unwrap()], vec![z.pow(rg), z.pow(rz)]);
        YDModule::induce(g.clone(), &rep, "v").unwrap()
    }

    #[test]
    fn induced_dimensions_and_degrees() {
        let (g, f) = setup();
        let v = m_g(&g, f, 6, 2);
        assert_eq!(v.dim(), 3);
        let expect: Vec<Elem> = ["g", "g e", "g e^2"].iter().map(|w| g.word(w).unwrap()).collect();
        assert_eq!(v.degrees(), &expect[..]);
        assert!(v.is_absolutely_simple().unwrap());
        assert_eq!(v.commutant_dim(), 1);

        let ez = g.word("e z").unwrap();
        let gens = vec![g.named("e").unwrap(), g.named("z").unwrap(), g.word("g^2").unwrap()];
        let rep = CentralizerRep::character(ez, gens, vec![f.zeta().pow(4), f.zeta().pow(6), f.one()]);
        let w = YDModule::induce(g.clone(), &rep, "w").unwrap();
        assert_eq!(w.dim(), 2);
        assert_eq!(w.support(), vec![ez, g.word("e^2 z").unwrap()]);
    }

    #[test]
    fn ill_defined_rep_is_rejected() {
        let (g, f) = setup();
        let x = g.named("g").unwrap();
        // ρ(g) must have order dividing 4
        let rep = CentralizerRep::character(x, vec![x, g.named("z").unwrap()], vec![f.zeta(), f.one()]);
        assert!(YDModule::induce(g.clone(), &rep, "v").is_err());
    }

    #[test]
    fn dual_and_double_dual() {
        let (g, f) = setup();
        let v = m_g(&g, f, 6, 2);
        let d = v.dual();
        assert_eq!(d.degree(0), g.inv(g.named("g").unwrap()));
        d.check_compatible().unwrap();
        assert_eq!(d.character_value(d.degree(0), d.degree(0)).unwrap(), f.from_i64(-1));
        assert!(d.dual().is_isomorphic(&v));
        assert!(!v.direct_sum(&v).unwrap().is_absolutely_simple().unwrap());
        assert!(v.direct_sum(&v).unwrap().commutant_dim() >= 4);
    }

    #[test]
    fn braid_equation_on_sum() {
        let (g, f) = setup();
        let v = m_g(&g, f, 6, 2);
        let x = g.named("z").unwrap();
        let gens = g.centralizer(x).generators.clone();
        let e = g.named("e").unwrap();
        let vals = gens.iter().map(|&s| f.from_i64(if s == e { 1 } else { -1 })).collect();
        let w = YDModule::induce(g.clone(), &CentralizerRep::character(x, gens, vals), "w").unwrap();
        let u = BraidedSpace::from_pair(&v, &w).unwrap();
        assert!(u.braid_equation_holds());
        let c = v.braiding(&w).unwrap();
        let c2 = w.braiding(&v).unwrap();
        assert!(!c2.mul(&c).is_identity());
    }

    #[test]
    fn submodule_closure() {
        let (g, f) = setup();
        let v = m_g(&g, f, 6, 2);
        let e0 = vec![f.one(), f.zero(), f.zero()];
        let (s, inc) = v.submodule_generated(&[e0]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(inc.rank(), 3);
        let (z, _) = v.submodule_generated(&[vec![f.zero(); 3]]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn non_split_rep_is_not_absolutely_simple() {
        // ε acting through the companion matrix of 1 + t + t² over Q
        let g = family("Gamma3").unwrap().build(&[2, 1]).unwrap();
        let f = Field::create(0, 1).unwrap();
        let ez = g.word("e z").unwrap();
        let cent = g.centralizer(ez);
        let c = Matrix::from_rows(f, vec![vec![f.zero(), f.from_i64(-1)], vec![f.one(), f.from_i64(-1)]]);
        let images = cent
            .generators
            .iter()
            .map(|&s| if s == g.named("e").unwrap() { c.clone() } else { Matrix::identity(f, 2) })
            .collect();
        let rep = CentralizerRep { x: ez, generators: cent.generators.clone(), images };
        let m = YDModule::induce(g.clone(), &rep, "w").unwrap();
        assert!(!m.is_absolutely_simple().unwrap());
        assert_eq!(roots_of_unity(f, 3).len(), 1);
    }
}
