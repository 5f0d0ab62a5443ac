//! Property tests for algebraic invariants.

use std::sync::{Arc, OnceLock};

use nichols_core::adjoint::{CartanMatrix, ChainConfig, PairState};
use nichols_core::groups::{family, Elem, Group};
use nichols_core::hilbert::{HilbertSeries, Incremental, QuantumFactor, RankStrategy};
use nichols_core::scalars::{quantum_factorial, quantum_integer, Field};
use nichols_core::weylgroupoid::CartanGraph;
use nichols_core::ydmod::{BraidedSpace, CentralizerRep, YDModule};
use num_bigint::BigUint;
use proptest::prelude::*;

fn gamma3() -> &'static Arc<Group> {
    static G: OnceLock<Arc<Group>> = OnceLock::new();
    G.get_or_init(|| family("Gamma3").unwrap().build(&[2, 6]).unwrap())
}

fn field() -> Field {
    Field::create(0, 6).unwrap()
}

/// `M(x, χ)` with `χ(s) = ζ₆^{k·6/ord(s)}` on the centralizer generators.
fn module(x: Elem, exps: &[u32], name: &str) -> Option<YDModule> {
    let g = gamma3();
    let f = field();
    let gens = g.centralizer(x).generators.clone();
    let vals = gens
        .iter()
        .zip(exps.iter().cycle())
        .map(|(&s, &k)| f.zeta().pow((k as usize * 6 / g.element_order(s)) as i64))
        .collect();
    YDModule::induce(g.clone(), &CentralizerRep::character(x, gens, vals), name).ok()
}

fn pair(v_exps: &[u32], w_word: &str, w_exps: &[u32]) -> Option<PairState> {
    let g = gamma3();
    let v = module(g.named("g")?, v_exps, "v")?;
    let w = module(g.word(w_word).ok()?, w_exps, "w")?;
    PairState::new(v, w).ok()
}

fn exps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..6, 3)
}

fn w_word() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["z", "e z", "z^2", "e z^3"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quantum_integer_addition(m in 0u32..12, n in 0u32..12, k in 0i64..12) {
        let f = Field::create(0, 12).unwrap();
        let q = f.zeta().pow(k);
        let lhs = quantum_integer(m + n, &q);
        let rhs = &quantum_integer(m, &q) + &(&q.pow(m as i64) * &quantum_integer(n, &q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quantum_factorial_vanishes_past_the_order(k in 1i64..12, n in 0u32..14) {
        let f = Field::create(0, 12).unwrap();
        let q = f.zeta().pow(k);
        let ord = q.order(12).unwrap();
        let zero = quantum_factorial(n, &q).is_zero();
        prop_assert_eq!(zero, ord > 1 && n >= ord);
    }

    #[test]
    fn series_expansion_sums_to_dimension(
        fs in prop::collection::vec((2u32..5, 0u32..3, 0u32..3), 1..5)
    ) {
        let factors: Vec<QuantumFactor> = fs.iter().map(|&(n, a, b)| QuantumFactor { n, a, b }).collect();
        let s = HilbertSeries::new(factors.clone());
        let e = s.expand().unwrap();
        let total: u128 = e.values().sum();
        prop_assert_eq!(BigUint::from(total), s.dimension());
        // symmetric about the top bidegree
        let top = factors.iter().fold((0, 0), |(x, y), f| (x + (f.n - 1) * f.a, y + (f.n - 1) * f.b));
        for (&(a, b), &c) in &e {
            prop_assert_eq!(e.get(&(top.0 - a, top.1 - b)).copied().unwrap_or(0), c);
        }
        let mut rev = factors;
        rev.reverse();
        prop_assert_eq!(HilbertSeries::new(rev), s);
    }

    #[test]
    fn braid_equation_on_pairs(v in exps(), ww in w_word(), w in exps()) {
        let Some(p) = pair(&v, ww, &w) else { return Ok(()) };
        prop_assert!(p.v.check_compatible().is_ok() && p.w.check_compatible().is_ok());
        let u = BraidedSpace::from_pair(&p.v, &p.w).unwrap();
        prop_assert!(u.braid_equation_holds());
    }

    #[test]
    fn reflections_are_involutions(v in exps(), ww in w_word(), w in exps(), i in 1usize..3) {
        let Some(p) = pair(&v, ww, &w) else { return Ok(()) };
        let cfg = ChainConfig::default();
        let Ok(r) = p.reflect(i, &cfg) else { return Ok(()) };
        let back = r.reflect(i, &cfg).expect("a reflected pair reflects back");
        prop_assert!(p.find_isomorphism(&back).is_some());
    }

    #[test]
    fn oracle_ranks_bounded_by_tensor_dimension(v in exps(), ww in w_word(), w in exps()) {
        let Some(p) = pair(&v, ww, &w) else { return Ok(()) };
        let u = BraidedSpace::from_pair(&p.v, &p.w).unwrap();
        let t = Incremental.ranks(&u, 3, 1 << 16).unwrap();
        let (dv, dw) = (p.v.dim(), p.w.dim());
        for (&(a, b), &r) in &t {
            let binom = (1..=b as usize).fold(1, |acc, k| acc * (a as usize + k) / k);
            prop_assert!(r <= binom * dv.pow(a) * dw.pow(b));
        }
        prop_assert_eq!(t[&(1, 0)], dv);
        prop_assert_eq!(t[&(0, 1)], dw);
    }

    #[test]
    fn class_quandles_are_self_distributive(
        name in prop::sample::select(vec!["Gamma2", "Gamma3", "Gamma4"]),
        c in 0usize..4,
        k in 0usize..256,
    ) {
        let fam = family(name).unwrap();
        let cands = fam.candidates(4);
        let g = fam.build(&cands[c % cands.len()]).unwrap();
        let x = k % g.order();
        prop_assert!(g.quandle_of_class(x).is_quandle());
    }

    #[test]
    fn finite_type_root_invariants(t in 0usize..4, swap in any::<bool>()) {
        let (a12, a21) = [(0, 0), (-1, -1), (-2, -1), (-3, -1)][t];
        let cartan = if swap { CartanMatrix { a12: a21, a21: a12 } } else { CartanMatrix { a12, a21 } };
        let g = CartanGraph { cartan: vec![cartan], r1: vec![0], r2: vec![0] };
        prop_assert!(g.check_axioms().is_ok());
        prop_assert!(g.check_roots().is_ok());
        let roots = g.positive_roots(0).unwrap();
        prop_assert_eq!(roots.len(), [2, 3, 4, 6][t]);
        prop_assert_eq!(g.positive_roots_from_second(0).unwrap().len(), roots.len());
    }
}
