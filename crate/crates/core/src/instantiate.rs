//! Concrete witnesses for the rank-two examples: a registry of example
//! conditions, a bounded search for group parameters and characters, and
//! end-to-end verification against the classification table.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::adjoint::{classify_pair, q3_zero, CartanMatrix, ChainConfig, PairLabel, PairState};
use crate::groups::{family, Elem, Group, GroupError, GroupSpec};
use crate::hilbert::{assemble, assemble_factors, HilbertSeries, QuantumFactor, UniFactor, YClass};
use crate::linalg::Matrix;
use crate::scalars::{roots_of_unity, Field, Scalar};
use crate::weylgroupoid::{default_identity, generate, root_modules, WeylError, DEFAULT_OBJECT_CAP};
use crate::ydmod::{BraidedSpace, CentralizerRep, YDModule};

pub const SEARCH_BOUND: u32 = 12;
pub const CHARACTERISTICS: [u64; 5] = [0, 2, 3, 5, 7];
const CYCLOTOMIC_ORDERS: [u32; 6] = [1, 2, 3, 4, 6, 12];

#[derive(Debug, Error)]
pub enum InstantiateError {
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("example {example} is not defined in characteristic {characteristic}")]
    Characteristic { example: String, characteristic: u64 },
    #[error("no witness for {0} within the search bounds")]
    NoWitness(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharRule {
    Any,
    Only(u64),
    Not(&'static [u64]),
}

impl CharRule {
    pub fn allows(&self, p: u64) -> bool {
        match self {
            CharRule::Any => true,
            CharRule::Only(q) => p == *q,
            CharRule::Not(qs) => !qs.contains(&p),
        }
    }
}

impl fmt::Display for CharRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharRule::Any => Ok(()),
            CharRule::Only(p) => write!(f, "{p}"),
            CharRule::Not(qs) => {
                write!(f, "≠{}", qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

/// Character values available to example conditions.
pub struct Values<'a> {
    group: &'a Group,
    field: Field,
    rho: &'a [Option<Matrix>],
    sigma: &'a [Option<Matrix>],
}

impl Values<'_> {
    fn at(&self, table: &[Option<Matrix>], word: &str) -> Option<Scalar> {
        let x = self.group.word(word).ok()?;
        table[x].as_ref()?.as_scalar()
    }

    /// `ρ(word)`; `None` off the centralizer.
    pub fn rho(&self, word: &str) -> Option<Scalar> {
        self.at(self.rho, word)
    }

    /// `σ(word)` when it acts as a scalar.
    pub fn sigma(&self, word: &str) -> Option<Scalar> {
        self.at(self.sigma, word)
    }

    pub fn minus_one(&self) -> Scalar {
        -&self.field.one()
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }
}

fn is_m1(v: &Values, x: &Scalar) -> bool {
    *x == v.minus_one()
}

/// The data of one example: where `V` and `W` live and what `ρ`, `σ` satisfy.
pub trait ExampleSpec: Send + Sync {
    fn id(&self) -> &'static str;
    fn family(&self) -> &'static str;
    fn characteristics(&self) -> CharRule;
    /// Degree of the generating component of `V`, as a word.
    fn v_degree(&self) -> &'static str;
    fn w_degree(&self) -> &'static str;
    /// Degree of the representation inducing `W`.
    fn w_rep_degree(&self) -> usize {
        1
    }
    fn support_sizes(&self) -> (usize, usize);
    fn conditions(&self) -> &'static str;
    fn holds(&self, v: &Values) -> Option<bool>;
    /// Expected ℘-label over Γ₃-images.
    fn label(&self) -> Option<PairLabel> {
        None
    }
    /// Roots with their univariate factors, as printed with the example.
    fn root_factors(&self, characteristic: u64) -> Vec<((u32, u32), Vec<UniFactor>)>;
}

type Predicate = fn(&Values) -> Option<bool>;
type RootTable = fn(u64) -> Vec<((u32, u32), Vec<UniFactor>)>;

struct Transcribed {
    id: &'static str,
    family: &'static str,
    chars: CharRule,
    v: &'static str,
    w: &'static str,
    w_rep: usize,
    supports: (usize, usize),
    text: &'static str,
    pred: Predicate,
    label: Option<PairLabel>,
    roots: RootTable,
}

impl ExampleSpec for Transcribed {
    fn id(&self) -> &'static str {
        self.id
    }
    fn family(&self) -> &'static str {
        self.family
    }
    fn characteristics(&self) -> CharRule {
        self.chars
    }
    fn v_degree(&self) -> &'static str {
        self.v
    }
    fn w_degree(&self) -> &'static str {
        self.w
    }
    fn w_rep_degree(&self) -> usize {
        self.w_rep
    }
    fn support_sizes(&self) -> (usize, usize) {
        self.supports
    }
    fn conditions(&self) -> &'static str {
        self.text
    }
    fn holds(&self, v: &Values) -> Option<bool> {
        (self.pred)(v)
    }
    fn label(&self) -> Option<PairLabel> {
        self.label
    }
    fn root_factors(&self, p: u64) -> Vec<((u32, u32), Vec<UniFactor>)> {
        (self.roots)(p)
    }
}

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

const Y1: [UniFactor; 3] = [(2, 1), (2, 1), (3, 1)];
const Y2: [UniFactor; 4] = [(3, 1), (4, 1), (6, 1), (6, 2)];

fn b2_roots(alpha2: Vec<UniFactor>, mid: Vec<UniFactor>, top: Vec<UniFactor>) -> Vec<((u32, u32), Vec<UniFactor>)> {
    vec![((1, 0), Y1.to_vec()), ((2, 1), top), ((1, 1), mid), ((0, 1), alpha2)]
}

pub fn examples() -> Vec<Box<dyn ExampleSpec>> {
    let list = vec![
        Transcribed {
            id: "g2a",
            family: "Gamma2",
            chars: CharRule::Any,
            v: "g",
            w: "h",
            w_rep: 1,
            supports: (2, 2),
            text: "ρ(εh²)σ(εg²) = 1, ρ(g) = σ(h) = -1",
            pred: |v| {
                let key = &v.rho("e h^2")? * &v.sigma("e g^2")?;
                Some(key.is_one() && is_m1(v, &v.rho("g")?) && is_m1(v, &v.sigma("h")?))
            },
            label: None,
            roots: |_| vec![((1, 0), vec![(2, 1)]), ((1, 1), vec![(2, 1)]), ((0, 1), vec![(2, 1)])]
                .into_iter()
                .map(|(r, f): ((u32, u32), Vec<UniFactor>)| (r, [f.clone(), f].concat()))
                .collect(),
        },
        Transcribed {
            id: "g2b",
            family: "Gamma2",
            chars: CharRule::Only(3),
            v: "g",
            w: "h",
            w_rep: 1,
            supports: (2, 2),
            text: "ρ(εh²)σ(εg²) = 1, ρ(g) = 1, σ(h) = -1",
            pred: |v| {
                let key = &v.rho("e h^2")? * &v.sigma("e g^2")?;
                Some(key.is_one() && v.rho("g")?.is_one() && is_m1(v, &v.sigma("h")?))
            },
            label: None,
            roots: |_| {
                vec![
                    ((1, 0), vec![(3, 1), (3, 1)]),
                    ((2, 1), vec![(2, 1), (2, 1)]),
                    ((1, 1), vec![(3, 1), (3, 1)]),
                    ((0, 1), vec![(2, 1), (2, 1)]),
                ]
            },
        },
        Transcribed {
            id: "g4",
            family: "Gamma4",
            chars: CharRule::Any,
            v: "h",
            w: "g",
            w_rep: 1,
            supports: (2, 4),
            text: "ρ(h) = -1, σ(g) = -1, ρ(ε) = ρ(g²)σ(ε⁻¹h²), ρ(ε)² = -1",
            pred: |v| {
                let re = v.rho("e")?;
                Some(
                    is_m1(v, &v.rho("h")?)
                        && is_m1(v, &v.sigma("g")?)
                        && re == &v.rho("g^2")? * &v.sigma("e^-1 h^2")?
                        && is_m1(v, &(&re * &re)),
                )
            },
            label: None,
            roots: |p| {
                let q = if p == 2 { vec![(2, 1), (2, 1)] } else { vec![(2, 1), (2, 1), (2, 2)] };
                let big = vec![(2, 1), (2, 1), (2, 1), (2, 1), (2, 2), (2, 2)];
                vec![((1, 0), q.clone()), ((1, 2), q), ((1, 1), big.clone()), ((0, 1), big)]
            },
        },
        Transcribed {
            id: "t",
            family: "T",
            chars: CharRule::Any,
            v: "z",
            w: "x1",
            w_rep: 1,
            supports: (1, 4),
            text: "σ(x1) = -1, σ(x2x3) = 1, (ρ(x1)σ(z))² - ρ(x1)σ(z) + 1 = 0, ρ(x1z)σ(z) = 1",
            pred: |v| {
                let rs = &v.rho("x1")? * &v.sigma("z")?;
                let quad = &(&(&rs * &rs) - &rs) + &v.field.one();
                Some(
                    is_m1(v, &v.sigma("x1")?)
                        && v.sigma("x2 x3")?.is_one()
                        && quad.is_zero()
                        && (&v.rho("x1 z")? * &v.sigma("z")?).is_one(),
                )
            },
            label: None,
            roots: |p| {
                let (short, long) = if p == 2 {
                    (vec![(3, 1)], vec![(2, 1), (2, 1), (3, 1), (3, 1)])
                } else {
                    (vec![(6, 1)], vec![(2, 1), (2, 1), (3, 1), (6, 1)])
                };
                vec![
                    ((1, 0), short.clone()),
                    ((1, 3), short.clone()),
                    ((2, 3), short),
                    ((0, 1), long.clone()),
                    ((1, 1), long.clone()),
                    ((1, 2), long),
                ]
            },
        },
        Transcribed {
            id: "z32-p1",
            family: "Gamma3",
            chars: CharRule::Any,
            v: "g",
            w: "e z",
            w_rep: 1,
            supports: (3, 2),
            text: "ρ(g) = σ(εz) = -1, ρ(z)²σ(εg²) = 1, (3)_{σ(ε)} = 0",
            pred: |v| {
                let rz = v.rho("z")?;
                Some(
                    is_m1(v, &v.rho("g")?)
                        && is_m1(v, &v.sigma("e z")?)
                        && (&(&rz * &rz) * &v.sigma("e g^2")?).is_one()
                        && q3_zero(&v.sigma("e")?),
                )
            },
            label: Some(PairLabel::P1),
            roots: |p| b2_roots(vec![(2, 1), (h_prime_p(p), 1)], Y1.to_vec(), vec![(h_p(p), 1)]),
        },
        Transcribed {
            id: "z32-p2",
            family: "Gamma3",
            chars: CharRule::Not(&[3]),
            v: "g",
            w: "e z",
            w_rep: 1,
            supports: (3, 2),
            text: "ρ(g) = σ(εz) = -1, ρ(z)²σ(εg²) = σ(ε) = 1",
            pred: |v| {
                let rz = v.rho("z")?;
                Some(
                    is_m1(v, &v.rho("g")?)
                        && is_m1(v, &v.sigma("e z")?)
                        && (&(&rz * &rz) * &v.sigma("e g^2")?).is_one()
                        && v.sigma("e")?.is_one(),
                )
            },
            label: Some(PairLabel::P2),
            roots: |_| b2_roots(vec![(2, 1), (2, 1)], Y1.to_vec(), vec![(2, 1), (2, 1)]),
        },
        Transcribed {
            id: "z32-p5'",
            family: "Gamma3",
            chars: CharRule::Only(2),
            v: "g",
            w: "e z",
            w_rep: 1,
            supports: (3, 2),
            text: "ρ(g) = 1, (3)_{σ(ε)} = 0, σ(z) = σ(ε), ρ(z)²σ(εg²) = 1",
            pred: |v| {
                let rz = v.rho("z")?;
                let se = v.sigma("e")?;
                Some(
                    v.rho("g")?.is_one()
                        && q3_zero(&se)
                        && v.sigma("z")? == se
                        && (&(&rz * &rz) * &v.sigma("e g^2")?).is_one(),
                )
            },
            label: Some(PairLabel::P5Prime),
            roots: |_| {
                vec![
                    ((1, 0), Y1.to_vec()),
                    ((2, 1), vec![(2, 1)]),
                    ((1, 1), Y2.to_vec()),
                    ((2, 3), vec![(2, 1)]),
                    ((1, 2), Y1.to_vec()),
                    ((0, 1), vec![(3, 1), (3, 1)]),
                ]
            },
        },
        Transcribed {
            id: "z31a-p4",
            family: "Gamma3",
            chars: CharRule::Any,
            v: "g",
            w: "z",
            w_rep: 1,
            supports: (3, 1),
            text: "ρ(g) = -1, (3)_{-ρ(z)σ(g)} = 0, ρ(z)σ(gz) = 1",
            pred: |v| {
                let rz = v.rho("z")?;
                Some(
                    is_m1(v, &v.rho("g")?)
                        && q3_zero(&-&(&rz * &v.sigma("g")?))
                        && (&rz * &v.sigma("g z")?).is_one(),
                )
            },
            label: Some(PairLabel::P4),
            roots: |p| b2_roots(vec![(h_p(p), 1)], Y1.to_vec(), vec![(2, 1), (h_prime_p(p), 1)]),
        },
        Transcribed {
            id: "z31a-p5",
            family: "Gamma3",
            chars: CharRule::Only(2),
            v: "g",
            w: "z",
            w_rep: 1,
            supports: (3, 1),
            text: "ρ(g) = σ(z) = 1, (3)_{ρ(z)σ(g)} = 0",
            pred: |v| {
                Some(
                    v.rho("g")?.is_one()
                        && v.sigma("z")?.is_one()
                        && q3_zero(&(&v.rho("z")? * &v.sigma("g")?)),
                )
            },
            label: Some(PairLabel::P5),
            roots: |_| {
                vec![
                    ((1, 0), Y1.to_vec()),
                    ((2, 1), vec![(3, 1), (3, 1)]),
                    ((3, 2), Y1.to_vec()),
                    ((4, 3), vec![(2, 1)]),
                    ((1, 1), Y2.to_vec()),
                    ((0, 1), vec![(2, 1)]),
                ]
            },
        },
        Transcribed {
            id: "z31a-p5''",
            family: "Gamma3",
            chars: CharRule::Only(2),
            v: "g",
            w: "z",
            w_rep: 1,
            supports: (3, 1),
            text: "σ(z) = 1, (3)_{ρ(z)σ(g)} = 0, ρ(gz)σ(g) = 1",
            pred: |v| {
                let rzsg = &v.rho("z")? * &v.sigma("g")?;
                Some(v.sigma("z")?.is_one() && q3_zero(&rzsg) && (&v.rho("g z")? * &v.sigma("g")?).is_one())
            },
            label: Some(PairLabel::P5Second),
            roots: |_| {
                vec![
                    ((1, 0), Y2.to_vec()),
                    ((4, 1), vec![(2, 1)]),
                    ((3, 1), Y1.to_vec()),
                    ((2, 1), vec![(3, 1), (3, 1)]),
                    ((1, 1), Y1.to_vec()),
                    ((0, 1), vec![(2, 1)]),
                ]
            },
        },
        Transcribed {
            id: "z31b-p3",
            family: "Gamma3",
            chars: CharRule::Not(&[3]),
            v: "g",
            w: "z",
            w_rep: 2,
            supports: (3, 1),
            text: "deg σ = 2, σ(1+ε+ε²) = 0, ρ(g) = σ(z) = -1, ρ(z²)σ(g²) = 1",
            pred: |v| {
                Some(
                    is_m1(v, &v.rho("g")?)
                        && is_m1(v, &v.sigma("z")?)
                        && (&v.rho("z^2")? * &v.sigma("g^2")?).is_one(),
                )
            },
            label: Some(PairLabel::P3),
            roots: |_| b2_roots(vec![(2, 1), (2, 1)], Y1.to_vec(), vec![(2, 1), (2, 1)]),
        },
        Transcribed {
            id: "z31a-p6",
            family: "Gamma3",
            chars: CharRule::Not(&[2, 3]),
            v: "g",
            w: "z",
            w_rep: 1,
            supports: (3, 1),
            text: "ρ(g) = σ(z) = -1, (3)_{-ρ(z)σ(g)} = 0",
            pred: |v| {
                Some(
                    is_m1(v, &v.rho("g")?)
                        && is_m1(v, &v.sigma("z")?)
                        && q3_zero(&-&(&v.rho("z")? * &v.sigma("g")?)),
                )
            },
            label: Some(PairLabel::P6),
            roots: |_| Vec::new(),
        },
    ];
    list.into_iter().map(|t| Box::new(t) as Box<dyn ExampleSpec>).collect()
}

pub fn example(id: &str) -> Result<Box<dyn ExampleSpec>, InstantiateError> {
    examples().into_iter().find(|e| e.id() == id).ok_or_else(|| InstantiateError::UnknownExample(id.into()))
}

// ---------------------------------------------------------------- table

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub rank: u32,
    pub family: &'static str,
    pub dimension: u64,
    pub characteristic: CharRule,
    pub support: &'static str,
    pub examples: &'static [&'static str],
}

/// The sixteen rows of the classification table.
pub fn table() -> Vec<TableRow> {
    use CharRule::*;
    let row = |rank, family, dimension, characteristic, support, examples| TableRow {
        rank,
        family,
        dimension,
        characteristic,
        support,
        examples,
    };
    vec![
        row(4, "Gamma2", 64, Any, "Z2^{2,2}", &["g2a"][..]),
        row(4, "Gamma2", 1296, Only(3), "Z2^{2,2}", &["g2b"]),
        row(4, "Gamma3", 10368, Not(&[2, 3]), "Z3^{3,1}", &["z31a-p4"]),
        row(4, "Gamma3", 5184, Only(2), "Z3^{3,1}", &["z31a-p4"]),
        row(4, "Gamma3", 1152, Only(3), "Z3^{3,1}", &["z31a-p4"]),
        row(4, "Gamma3", 2239488, Only(2), "Z3^{3,1}", &["z31a-p5", "z31a-p5''"]),
        row(5, "Gamma3", 10368, Not(&[2, 3]), "Z3^{3,2}", &["z32-p1"]),
        row(5, "Gamma3", 5184, Only(2), "Z3^{3,2}", &["z32-p1"]),
        row(5, "Gamma3", 1152, Only(3), "Z3^{3,2}", &["z32-p1"]),
        row(5, "Gamma3", 2304, Any, "Z3^{3,2}", &["z32-p2"]),
        row(5, "Gamma3", 2304, Any, "Z3^{3,1}", &["z31b-p3"]),
        row(5, "Gamma3", 2239488, Only(2), "Z3^{3,2}", &["z32-p5'"]),
        row(5, "T", 80621568, Not(&[2]), "ZT^{4,1}", &["t"]),
        row(5, "T", 1259712, Only(2), "ZT^{4,1}", &["t"]),
        row(6, "Gamma4", 262144, Not(&[2]), "Z4^{4,2}", &["g4"]),
        row(6, "Gamma4", 65536, Only(2), "Z4^{4,2}", &["g4"]),
    ]
}

/// Smallest characteristic from the working list allowed by both the row and the example.
pub fn representative_characteristic(row: &TableRow, ex: &dyn ExampleSpec) -> Option<u64> {
    CHARACTERISTICS.into_iter().find(|&p| row.characteristic.allows(p) && ex.characteristics().allows(p))
}

pub fn expected_dimension(id: &str, p: u64) -> Option<u64> {
    table().into_iter().find(|r| r.examples.contains(&id) && r.characteristic.allows(p)).map(|r| r.dimension)
}

// ---------------------------------------------------------------- search

fn group_cache() -> &'static Mutex<HashMap<GroupSpec, Arc<Group>>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Arc<Group>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches) a group; equal specs give the same `Arc`.
pub fn cached_group(family_name: &str, params: &[u32]) -> Result<Arc<Group>, GroupError> {
    let spec = GroupSpec { family: family_name.into(), parameters: params.to_vec() };
    if let Some(g) = group_cache().lock().expect("group cache").get(&spec) {
        return Ok(g.clone());
    }
    let g = family(family_name)?.build(params)?;
    group_cache().lock().expect("group cache").insert(spec, g.clone());
    Ok(g)
}

fn fields_for(p: u64) -> Vec<Field> {
    let mut out: Vec<Field> = CYCLOTOMIC_ORDERS.iter().filter_map(|&n| Field::create(p, n).ok()).collect();
    // Q(ζ₃) = Q(ζ₆) and similar coincidences: keep the smallest order per degree and root count
    let mut seen = BTreeSet::new();
    out.retain(|f| seen.insert((f.degree(), roots_of_unity(*f, 24).len())));
    out
}

/// All characters of `G^x` on the chosen centralizer generators.
pub(crate) fn characters(group: &Group, field: Field, x: Elem) -> Vec<(CentralizerRep, Vec<Option<Matrix>>)> {
    let gens = group.centralizer(x).generators.clone();
    let choices: Vec<Vec<Scalar>> =
        gens.iter().map(|&s| roots_of_unity(field, group.element_order(s) as u32)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let vals: Vec<Scalar> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let rep = CentralizerRep::character(x, gens.clone(), vals);
        if let Ok(t) = rep.extend(group) {
            out.push((rep, t));
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    out
}

/// Degree-2 representations `ε ↦ diag(λ, λ²)`, `g ↦ [[0, s], [1, 0]]`, `z ↦ c`.
pub(crate) fn degree_two_reps(group: &Group, field: Field) -> Vec<(CentralizerRep, Vec<Option<Matrix>>)> {
    let (Some(e), Some(g), Some(z)) = (group.named("e"), group.named("g"), group.named("z")) else {
        return Vec::new();
    };
    let zero = field.zero();
    let one = field.one();
    let lambdas: Vec<Scalar> = roots_of_unity(field, 3).into_iter().filter(|l| !l.is_one()).collect();
    let all = roots_of_unity(field, 24);
    let mut out = Vec::new();
    for l in &lambdas {
        for s in &all {
            for c in &all {
                let images = vec![
                    Matrix::from_rows(field, vec![vec![l.clone(), zero.clone()], vec![zero.clone(), l * l]]),
                    Matrix::from_rows(field, vec![vec![zero.clone(), s.clone()], vec![one.clone(), zero.clone()]]),
                    Matrix::scalar(field, 2, c),
                ];
                let rep = CentralizerRep { x: z, generators: vec![e, g, z], images };
                if let Ok(t) = rep.extend(group) {
                    out.push((rep, t));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RepRecord {
    pub degree: String,
    pub dim: usize,
    /// Generator word and its image, row by row.
    pub values: Vec<(String, Vec<Vec<String>>)>,
}

fn rep_record(group: &Group, rep: &CentralizerRep, dim: usize) -> RepRecord {
    RepRecord {
        degree: group.format(rep.x),
        dim,
        values: rep.generators.iter().zip(&rep.images).map(|(s, m)| (group.format(*s), m.to_strings())).collect(),
    }
}

/// Parameters and characters of a witness, enough to rebuild it.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub example: String,
    pub group: String,
    pub order: usize,
    pub field: String,
    pub characteristic: u64,
    pub conditions: String,
    pub v: RepRecord,
    pub w: RepRecord,
    pub candidates_tried: usize,
}

pub struct Instance {
    pub example: &'static str,
    pub pair: PairState,
    pub provenance: Provenance,
}

/// Smallest witness, ordered by field degree, group order and adjoined root.
pub fn instantiate(ex: &dyn ExampleSpec, characteristic: u64) -> Result<Instance, InstantiateError> {
    if !ex.characteristics().allows(characteristic) {
        return Err(InstantiateError::Characteristic { example: ex.id().into(), characteristic });
    }
    let fam = family(ex.family())?;
    let mut candidates: Vec<(usize, usize, u32, Vec<u32>, Field)> = Vec::new();
    for f in fields_for(characteristic) {
        for params in fam.candidates(SEARCH_BOUND) {
            candidates.push((f.degree(), fam.order(&params), f.cyclotomic_order(), params, f));
        }
    }
    candidates.sort_by(|a, b| (a.0, a.1, a.2, &a.3).cmp(&(b.0, b.1, b.2, &b.3)));
    let (sv, sw) = ex.support_sizes();
    for (tried, (_, _, _, params, field)) in candidates.into_iter().enumerate() {
        let group = cached_group(ex.family(), &params)?;
        let (Ok(xv), Ok(xw)) = (group.word(ex.v_degree()), group.word(ex.w_degree())) else { continue };
        if group.conjugacy_class(xv).len() != sv || group.conjugacy_class(xw).len() != sw {
            continue;
        }
        let rhos = characters(&group, field, xv);
        let sigmas = if ex.w_rep_degree() == 2 { degree_two_reps(&group, field) } else { characters(&group, field, xw) };
        for (rho, rt) in &rhos {
            for (sigma, st) in &sigmas {
                let vals = Values { group: &group, field, rho: rt, sigma: st };
                if ex.holds(&vals) != Some(true) {
                    continue;
                }
                let (Ok(v), Ok(w)) = (YDModule::induce(group.clone(), rho, "v"), YDModule::induce(group.clone(), sigma, "w"))
                else {
                    continue;
                };
                if ex.w_rep_degree() == 2 && !matches!(w.is_absolutely_simple(), Ok(true)) {
                    continue;
                }
                let pair = PairState::new(v, w).expect("same group and field");
                let provenance = Provenance {
                    example: ex.id().into(),
                    group: group.spec().to_string(),
                    order: group.order(),
                    field: field.to_string(),
                    characteristic,
                    conditions: ex.conditions().into(),
                    v: rep_record(&group, rho, pair.v.dim()),
                    w: rep_record(&group, sigma, pair.w.dim()),
                    candidates_tried: tried + 1,
                };
                return Ok(Instance { example: ex.id(), pair, provenance });
            }
        }
    }
    Err(InstantiateError::NoWitness(ex.id().into()))
}

// ---------------------------------------------------------------- verification

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub example: String,
    pub characteristic: u64,
    pub provenance: Provenance,
    pub label: Option<String>,
    pub cartan: Option<CartanMatrix>,
    pub objects: Option<usize>,
    pub standard: Option<bool>,
    pub roots: Vec<String>,
    pub root_classes: Vec<String>,
    pub factors: Vec<QuantumFactor>,
    pub series: Option<String>,
    pub dimension: Option<String>,
    pub expected_dimension: Option<u64>,
    pub support: Option<String>,
    /// "finite", or the reason the groupoid could not be built.
    pub outcome: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }
}

pub fn root_factor_series(data: &[((u32, u32), Vec<UniFactor>)]) -> HilbertSeries {
    assemble_factors(data)
}

fn support_quandle(pair: &PairState) -> Option<&'static str> {
    let mut elems = pair.v.support();
    elems.extend(pair.w.support());
    let q = pair.group().quandle(&elems);
    if q.is_quandle() {
        q.identify()
    } else {
        None
    }
}

/// Runs the whole pipeline on a witness and compares against the table.
pub fn verify_instance(ex: &dyn ExampleSpec, inst: &Instance, cfg: &ChainConfig, object_cap: usize) -> Report {
    let pair = &inst.pair;
    let p = pair.field().characteristic();
    let mut r = Report {
        example: ex.id().into(),
        characteristic: p,
        provenance: inst.provenance.clone(),
        label: None,
        cartan: None,
        objects: None,
        standard: None,
        roots: Vec::new(),
        root_classes: Vec::new(),
        factors: Vec::new(),
        series: None,
        dimension: None,
        expected_dimension: expected_dimension(ex.id(), p),
        support: support_quandle(pair).map(str::to_string),
        outcome: String::new(),
        checks: Vec::new(),
        pass: false,
    };
    r.check("yd-compatible", pair.v.check_compatible().is_ok() && pair.w.check_compatible().is_ok(), "");
    let simple = matches!(pair.v.is_absolutely_simple(), Ok(true)) && matches!(pair.w.is_absolutely_simple(), Ok(true));
    r.check("absolutely-simple", simple, "");
    r.check("braiding-square", !pair.braiding_square_is_identity(), "c_{W,V} c_{V,W} ≠ id");
    let braided = BraidedSpace::from_pair(&pair.v, &pair.w).map(|u| u.braid_equation_holds()).unwrap_or(false);
    r.check("braid-equation", braided, "");
    if let Some(row) = table().into_iter().find(|row| row.examples.contains(&ex.id())) {
        r.check("support-quandle", r.support.as_deref() == Some(row.support), r.support.clone().unwrap_or_default());
    }
    if let Some(want) = ex.label() {
        let got = classify_pair(pair);
        r.label = Some(got.ascii().into());
        r.check("pair-class", got == want, format!("{got} (expected {want})"));
    }
    let identity = default_identity(pair);
    let scheme = match generate(pair, identity.as_ref(), cfg, object_cap) {
        Ok(s) => s,
        Err(e) => {
            r.outcome = e.to_string();
            let expected_undefined = ex.label() == Some(PairLabel::P6);
            let is_undefined = matches!(e, WeylError::ReflectionUndefined { .. });
            r.check("groupoid", expected_undefined && is_undefined, e.to_string());
            r.pass = r.checks.iter().all(|c| c.pass);
            return r;
        }
    };
    if ex.label() == Some(PairLabel::P6) {
        r.check("groupoid", false, "expected an undefined reflection");
    }
    r.outcome = "finite".into();
    r.objects = Some(scheme.objects.len());
    r.standard = Some(scheme.is_standard());
    r.cartan = Some(scheme.graph.cartan[0]);
    let axioms = scheme.check_axioms().and_then(|_| scheme.graph.check_roots());
    r.check("cartan-scheme", axioms.is_ok(), axioms.err().unwrap_or_default());
    let roots = match scheme.positive_roots(0) {
        Ok(roots) => roots,
        Err(e) => {
            r.check("roots", false, e.to_string());
            r.pass = false;
            return r;
        }
    };
    r.roots = roots.iter().map(|x| x.to_string()).collect();
    let transcribed = ex.root_factors(p);
    let want: BTreeSet<(u32, u32)> = transcribed.iter().map(|x| x.0).collect();
    let got: BTreeSet<(u32, u32)> = roots.iter().map(|x| x.coefficients()).collect();
    r.check("root-set", want == got, format!("{} roots", got.len()));
    let printed = root_factor_series(&transcribed);
    let series = if ex.family() == "Gamma3" {
        match root_modules(pair, &roots, cfg) {
            Ok(mods) => {
                r.root_classes = mods.iter().map(|m| m.class.map_or("-".into(), |c| c.to_string())).collect();
                let data: Vec<((u32, u32), Option<_>)> = mods.iter().map(|m| (m.root.coefficients(), m.class)).collect();
                match assemble(&data, p) {
                    Ok(s) => {
                        r.check("series-matches-printed", s == printed, s.to_string());
                        s
                    }
                    Err(e) => {
                        r.check("series", false, e.to_string());
                        printed
                    }
                }
            }
            Err(e) => {
                r.check("root-modules", false, e.to_string());
                printed
            }
        }
    } else {
        printed
    };
    let dim = series.dimension();
    r.factors = series.factors.clone();
    r.series = Some(series.to_string());
    r.dimension = Some(dim.to_string());
    if let Some(d) = r.expected_dimension {
        r.check("dimension", dim == d.into(), format!("{dim} (expected {d})"));
    }
    r.pass = r.checks.iter().all(|c| c.pass);
    r
}

pub fn verify_example(id: &str, characteristic: u64, cfg: &ChainConfig) -> Result<Report, InstantiateError> {
    let ex = example(id)?;
    let inst = instantiate(ex.as_ref(), characteristic)?;
    Ok(verify_instance(ex.as_ref(), &inst, cfg, DEFAULT_OBJECT_CAP))
}

/// Table rows with the examples to run in characteristic `p`; rows whose
/// example excludes `p` are listed with `None`.
pub fn table_runs(p: u64) -> Vec<(TableRow, &'static str, bool)> {
    let mut out = Vec::new();
    for row in table() {
        if !row.characteristic.allows(p) {
            continue;
        }
        for &id in row.examples {
            let ok = example(id).map(|e| e.characteristics().allows(p)).unwrap_or(false);
            out.push((row.clone(), id, ok));
        }
    }
    out
}

/// A module of class `y`: an entry of a labelled witness, or `M(z, τ)` with
/// `τ(z) = −1` for `𝒴₃`.
pub fn yclass_witness(y: YClass) -> Result<YDModule, InstantiateError> {
    let entry = |id: &str, p: u64, second: bool| -> Result<YDModule, InstantiateError> {
        let inst = instantiate(example(id)?.as_ref(), p)?;
        Ok(if second { inst.pair.w } else { inst.pair.v })
    };
    match y {
        YClass::Y1 => entry("z32-p1", 0, false),
        YClass::Y2 => entry("z31a-p5''", 2, false),
        YClass::Y3 => {
            let group = cached_group("Gamma3", &[2, 2])?;
            let field = Field::create(0, 1).expect("rational field");
            let z = group.named("z").expect("Γ₃ generator");
            let gens = group.centralizer(z).generators.clone();
            let vals = gens.iter().map(|&s| field.from_i64(if s == z { -1 } else { 1 })).collect();
            YDModule::induce(group, &CentralizerRep::character(z, gens, vals), "w")
                .map_err(|_| InstantiateError::NoWitness(y.ascii().into()))
        }
        YClass::Y4 => entry("z31a-p4", 0, true),
        YClass::Y5 => entry("z31b-p3", 0, true),
        YClass::Y6 => entry("z32-p5'", 2, true),
        YClass::Y7 => entry("z32-p2", 0, true),
        YClass::Y8 => entry("z32-p1", 0, true),
    }
}

/// Expanded coefficients of a series as `(d₁, d₂) ↦ c`.
pub fn coefficient_table(series: &HilbertSeries, max_total: u32) -> BTreeMap<(u32, u32), u128> {
    series.expand_truncated(max_total).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_dimensions_from_printed_factors() {
        for row in table() {
            for &id in row.examples {
                let ex = example(id).unwrap();
                let p = representative_characteristic(&row, ex.as_ref()).unwrap();
                let dim = root_factor_series(&ex.root_factors(p)).dimension();
                assert_eq!(dim, row.dimension.into(), "{id} in characteristic {p}");
            }
        }
    }

    #[test]
    fn runs_per_characteristic() {
        let dims = |p| table_runs(p).into_iter().filter(|r| r.2).map(|r| r.0.dimension).collect::<Vec<_>>();
        assert_eq!(dims(0), vec![64, 10368, 10368, 2304, 2304, 80621568, 262144]);
        assert_eq!(dims(2), vec![64, 5184, 2239488, 2239488, 5184, 2304, 2304, 2239488, 1259712, 65536]);
        assert!(dims(3).contains(&1296) && dims(3).contains(&1152));
    }

    #[test]
    fn z32_p1_witness() {
        let inst = instantiate(example("z32-p1").unwrap().as_ref(), 0).unwrap();
        assert_eq!(classify_pair(&inst.pair), PairLabel::P1);
        assert_eq!(inst.pair.v.dim(), 3);
        assert_eq!(inst.pair.w.dim(), 2);
    }

    #[test]
    fn witnesses_have_their_class() {
        for y in YClass::ALL {
            let m = yclass_witness(y).unwrap();
            assert_eq!(crate::hilbert::classify_y(&m), Some(y), "{}", y.ascii());
        }
    }
}
