//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steiner_core::hypergraph::{
    chromatic_number, is_colourable, is_coverable, Colourability, Coverability, Hypergraph,
};
use steiner_core::limits::Limits;
use steiner_core::monomial::{intersect, member_of_power, member_of_power_exhaustive, minimalize, multiply, power};
use steiner_core::symbolic::{alpha, member_of_symbolic, symbolic_power};
use steiner_core::{Monomial, MonomialIdeal, PrimeDecomposition, VertexSet};

pub fn random_monomial(rng: &mut impl Rng, k: usize, max_degree: u32) -> Monomial {
    let mut e = vec![0u32; k];
    for _ in 0..rng.gen_range(0..=max_degree) {
        e[rng.gen_range(0..k)] += 1;
    }
    Monomial::new(e)
}

fn random_generators(rng: &mut impl Rng, k: usize) -> Vec<Monomial> {
    (0..rng.gen_range(1..=6)).map(|_| random_monomial(rng, k, 4)).collect()
}

fn in_span(gens: &[Monomial], w: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(w))
}

fn lower(w: &Monomial, i: usize) -> Monomial {
    let mut e = w.exponents().to_vec();
    e[i] -= 1;
    Monomial::new(e)
}

fn boxed(k: usize, top: u32) -> impl Iterator<Item = Monomial> {
    (0..k).map(|_| 0..=top).multi_cartesian_product().map(Monomial::new)
}

/// `ideal` is exactly the ideal whose members satisfy `oracle`, given that
/// every monomial in `candidates` satisfies `oracle` and generates it.
fn assert_exact(ideal: &MonomialIdeal, candidates: &[Monomial], oracle: impl Fn(&Monomial) -> bool) {
    let gens = ideal.generators();
    for g in gens {
        assert!(oracle(g), "{g} fails the oracle");
        for i in (0..g.variable_count()).filter(|&i| g.exponents()[i] > 0) {
            assert!(!oracle(&lower(g, i)), "{g} is not minimal");
        }
    }
    for c in candidates {
        assert!(in_span(gens, c), "candidate {c} not generated");
    }
    assert!(gens.windows(2).all(|w| w[0] < w[1]), "generators not in canonical order");
}

/// Intersection, product and square of random ideals (at most 5 variables,
/// 6 generators, degree 4) against their defining predicates.
pub fn check_arithmetic(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let k = rng.gen_range(1..=5);
        let a = random_generators(&mut rng, k);
        let b = random_generators(&mut rng, k);
        let i = minimalize(k, a.clone()).unwrap();
        let j = minimalize(k, b.clone()).unwrap();
        assert_exact(&i, &a, |w| in_span(&a, w));

        let lcms: Vec<Monomial> = a.iter().cartesian_product(&b).map(|(x, y)| x.lcm(y)).collect();
        assert_exact(&intersect(&i, &j).unwrap(), &lcms, |w| in_span(&a, w) && in_span(&b, w));

        let products: Vec<Monomial> = a.iter().cartesian_product(&b).map(|(x, y)| x.checked_mul(y).unwrap()).collect();
        let ij = multiply(&i, &j).unwrap();
        assert_exact(&ij, &products, |w| {
            a.iter().cartesian_product(&b).any(|(x, y)| x.checked_mul(y).unwrap().divides(w))
        });

        // Square through three routes.
        let squares: Vec<Monomial> = a.iter().cartesian_product(&a).map(|(x, y)| x.checked_mul(y).unwrap()).collect();
        let sq = power(&i, 2).unwrap();
        assert_exact(&sq, &squares, |w| in_span(&squares, w));
        for w in boxed(k, 3) {
            assert_eq!(sq.contains(&w).unwrap(), member_of_power(&w, &i, 2, 0).unwrap());
        }
    }
}

pub fn check_power_membership(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let k = rng.gen_range(1..=5);
        let i = minimalize(k, random_generators(&mut rng, k)).unwrap();
        let r = rng.gen_range(1..=3);
        let slack = rng.gen_range(0..=3);
        let pow = power(&i, r).unwrap();
        for _ in 0..20 {
            let w = random_monomial(&mut rng, k, 10);
            let fast = member_of_power(&w, &i, r, slack).unwrap();
            assert_eq!(fast, member_of_power_exhaustive(&w, &i, r, slack).unwrap(), "{w} in M^{slack} I^{r}");
            let direct = pow.generators().iter().any(|g| g.divides(&w) && w.degree() - g.degree() >= slack);
            assert_eq!(fast, direct, "{w} against the materialized power");
        }
    }
}

fn random_decomposition(rng: &mut impl Rng, k: usize) -> (PrimeDecomposition, Vec<VertexSet>) {
    let raw: Vec<VertexSet> = (0..rng.gen_range(1..=5))
        .map(|_| {
            let mut s = VertexSet::EMPTY;
            while s.is_empty() {
                s = VertexSet::from_bits(rng.gen::<u64>() & VertexSet::full(k).bits());
            }
            s
        })
        .collect();
    (PrimeDecomposition::new(k, raw.clone()).unwrap(), raw)
}

fn raw_member(w: &Monomial, supports: &[VertexSet], m: u32) -> bool {
    supports.iter().all(|s| s.iter().map(|v| w.exponents()[v - 1]).sum::<u32>() >= m)
}

/// Symbolic powers of random decompositions against the linear membership
/// predicate, including supports that normalization drops.
pub fn check_symbolic(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let k = rng.gen_range(1..=6);
        let (p, raw) = random_decomposition(&mut rng, k);
        for m in 1..=3 {
            let ideal = symbolic_power(&p, m, &Limits::default()).unwrap();
            // Generators of P^(m) have exponents at most m, so the box decides equality.
            for w in boxed(k, m) {
                let member = member_of_symbolic(&w, &p, m).unwrap();
                assert_eq!(ideal.contains(&w).unwrap(), member, "{w} in P^({m})");
                // Dropping supports that contain others must not change anything.
                assert_eq!(member, raw_member(&w, &raw, m));
            }
            assert_exact(&ideal, &[], |w| member_of_symbolic(w, &p, m).unwrap());
            let a = alpha(&p, m).unwrap();
            assert_eq!(Some(a.degree), ideal.alpha());
            assert!(member_of_symbolic(&a.witness, &p, m).unwrap());
            for _ in 0..10 {
                let w = random_monomial(&mut rng, k, a.degree.saturating_sub(1) as u32);
                assert!(w.degree() >= a.degree || !member_of_symbolic(&w, &p, m).unwrap());
            }
        }
    }
}

fn random_hypergraph(rng: &mut impl Rng) -> Hypergraph {
    let n = rng.gen_range(2..=8);
    let full = VertexSet::full(n).bits();
    let mut edges: Vec<VertexSet> = Vec::new();
    for _ in 0..rng.gen_range(1..=10) {
        let size = rng.gen_range(2..=n.min(4));
        let mut e = VertexSet::EMPTY;
        while e.len() < size {
            e.insert(rng.gen_range(1..=n));
        }
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    let covered = edges.iter().fold(VertexSet::EMPTY, |a, e| a.union(*e));
    let rest = VertexSet::from_bits(full & !covered.bits());
    if !rest.is_empty() {
        let mut e = rest;
        if e.len() == 1 {
            e.insert(if e.contains(1) { 2 } else { 1 });
        }
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

fn visiting_order(h: &Hypergraph) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=h.vertex_count()).collect();
    order.sort_by(|&a, &b| h.degree(b).cmp(&h.degree(a)).then(a.cmp(&b)));
    order
}

/// All class assignments along `order` with classes numbered in first-use
/// order, in lexicographic order.
fn assignments(len: usize, max_classes: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, used: usize, len: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for c in 0..(used + 1).min(max) {
            prefix.push(c);
            grow(prefix, used.max(c + 1), len, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 0, len, max_classes, &mut out);
    out
}

fn classes(order: &[usize], assignment: &[usize]) -> Vec<VertexSet> {
    let count = assignment.iter().max().map_or(0, |c| c + 1);
    let mut sets = vec![VertexSet::EMPTY; count];
    for (&v, &c) in order.iter().zip(assignment) {
        sets[c].insert(v);
    }
    sets
}

fn brute_cover(h: &Hypergraph, c: usize) -> Option<Vec<VertexSet>> {
    let order = visiting_order(h);
    assignments(h.vertex_count(), c)
        .into_iter()
        .map(|a| classes(&order, &a))
        .find(|cls| cls.len() == c && h.edges().iter().all(|e| cls.iter().all(|k| e.intersects(*k))))
}

fn brute_colour(h: &Hypergraph, m: usize) -> Option<Vec<VertexSet>> {
    let order = visiting_order(h);
    assignments(h.vertex_count(), m)
        .into_iter()
        .map(|a| classes(&order, &a))
        .find(|cls| h.edges().iter().all(|e| cls.iter().all(|k| !e.is_subset(*k))))
}

/// Coverability and colourability of random hypergraphs (at most 8
/// vertices) against enumeration, including the choice of witness.
pub fn check_searches(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let h = random_hypergraph(&mut rng);
        for c in 1..=3 {
            let expected = brute_cover(&h, c);
            match is_coverable(&h, c) {
                Coverability::Coverable(p) => {
                    assert!(p.covers(&h) && p.is_partition_of(h.vertex_count()));
                    assert_eq!(Some(p.classes().to_vec()), expected, "{h:?} c={c}");
                }
                Coverability::NotCoverable => assert_eq!(expected, None, "{h:?} c={c}"),
            }
        }
        for m in 1..=3 {
            let expected = brute_colour(&h, m);
            match is_colourable(&h, m) {
                Colourability::Colourable(p) => {
                    assert!(p.colours(&h) && p.len() <= m);
                    assert_eq!(Some(p.classes().to_vec()), expected, "{h:?} m={m}");
                }
                Colourability::NotColourable => assert_eq!(expected, None, "{h:?} m={m}"),
            }
        }
    }
}

pub fn check_cover_implies_colour(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let h = random_hypergraph(&mut rng);
        for c in 2..=4 {
            if let Coverability::Coverable(p) = is_coverable(&h, c) {
                // Merging all but one class keeps every edge two-coloured.
                assert!(p.colours(&h));
                assert!(matches!(is_colourable(&h, 2), Colourability::Colourable(_)), "{h:?}");
            }
        }
    }
}

pub fn check_chromatic_monotone(seed: u64, instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let h = random_hypergraph(&mut rng);
        let chi = chromatic_number(&h).unwrap();
        assert!(brute_colour(&h, chi).is_some());
        assert!(chi == 1 || brute_colour(&h, chi - 1).is_none());
        for i in 0..h.edges().len() {
            if let Ok(smaller) = h.without_edge(i) {
                assert!(chromatic_number(&smaller).unwrap() <= chi);
            }
        }
    }
}
