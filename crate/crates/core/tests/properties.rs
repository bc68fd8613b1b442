use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use strop_core::catalog::{klein_bottle, projective_plane, projective_space3, sphere, GridTorus};
use strop_core::chain::{
    homology, validate_complex, GroupSummary, OrientationCharacter, SimplicialComplex,
};
use strop_core::rational::{format_q, parse_q, q_frac};
use strop_core::torus::random::{random_bichain, random_loop_cycle};
use strop_core::torus::{
    chain_intersection, compose_loops, loop_class_torus, perturb_translate, total_boundary,
    AffineSimplex, BiChain, LoopFamily, TorusChain,
};
use strop_core::{smith_normal_form, IntMatrix};

fn catalog(i: usize) -> SimplicialComplex {
    match i {
        0 => sphere(2),
        1 => projective_plane(),
        2 => klein_bottle(3).unwrap(),
        3 => GridTorus::new(2, 3).unwrap().complex,
        4 => projective_space3(),
        _ => sphere(3),
    }
}

/// The same complex with vertices relabelled and simplices listed in a
/// shuffled order.
fn scrambled(k: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<u32> = (0..k.vertices().len() as u32).map(|x| 3 * x + 7).collect();
    labels.shuffle(&mut rng);
    let relabel = |v: u32| labels[k.vertices().iter().position(|&w| w == v).unwrap()];
    let dim = k.dim().unwrap();
    let simplices: Vec<Vec<Vec<u32>>> = (0..=dim)
        .map(|d| {
            let mut list: Vec<Vec<u32>> = k
                .simplices(d)
                .iter()
                .map(|s| {
                    let mut s: Vec<u32> = s.iter().map(|&v| relabel(v)).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            list.shuffle(&mut rng);
            list
        })
        .collect();
    let mut vertices: Vec<u32> = labels.clone();
    vertices.shuffle(&mut rng);
    SimplicialComplex::new(vertices, simplices).unwrap()
}

fn boundaries_compose_to_zero(k: &SimplicialComplex, w: &OrientationCharacter) -> bool {
    let c = validate_complex(k, w).unwrap();
    (1..c.top()).all(|d| c.boundary(d).mul(&c.boundary(d + 1)).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(
        rows in 0usize..6,
        cols in 0usize..6,
        entries in proptest::collection::vec(-9i64..=9, 36),
    ) {
        let mut a = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a[(i, j)] = entries[i * 6 + j];
            }
        }
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.determinant().abs(), 1);
        prop_assert_eq!(s.v.determinant().abs(), 1);
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        let diag = s.diagonal();
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        prop_assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
    }

    #[test]
    fn homology_ignores_labels_and_listing_order(which in 0usize..6, seed in any::<u64>()) {
        let k = catalog(which);
        let s = scrambled(&k, seed);
        let plain = |k: &SimplicialComplex| homology(&validate_complex(k, &OrientationCharacter::trivial(k)).unwrap());
        prop_assert_eq!(plain(&k), plain(&s));
        let w = OrientationCharacter::from_local_orientations(&k).unwrap();
        let ws = OrientationCharacter::from_local_orientations(&s).unwrap();
        prop_assert_eq!(
            homology(&validate_complex(&k, &w).unwrap()),
            homology(&validate_complex(&s, &ws).unwrap())
        );
        prop_assert!(boundaries_compose_to_zero(&s, &ws));
        prop_assert!(boundaries_compose_to_zero(&s, &OrientationCharacter::trivial(&s)));
    }

    #[test]
    fn total_boundary_squares_to_zero(seed in any::<u64>(), n in 1usize..=3, p in 0usize..=3, q in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bichain(&mut rng, n, p, q, 3);
        prop_assert!(total_boundary(&total_boundary(&b)).is_empty());
    }

    #[test]
    fn canonical_form_forgets_lattice_shifts_and_vertex_order(
        seed in any::<u64>(),
        shift in proptest::collection::vec(-3i64..=3, 2),
        rotate in 0usize..3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_loop_cycle(&mut rng, 2, 2);
        let mut moved = TorusChain::zero(2, 2);
        for (s, coef) in c.terms() {
            let mut vertices: Vec<_> = s
                .base
                .vertices
                .iter()
                .map(|v| v.iter().zip(&shift).map(|(x, &d)| x + q_frac(d, 1)).collect())
                .collect();
            // A cyclic rotation of three vertices is an even permutation.
            vertices.rotate_left(rotate);
            let f = LoopFamily::new(AffineSimplex::new(vertices).unwrap(), s.winding.clone()).unwrap();
            moved.add(coef, f).unwrap();
        }
        prop_assert_eq!(moved, c);
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = q_frac(n, d);
        prop_assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
    }

    #[test]
    fn group_strings_round_trip(free in 0usize..4, torsion in proptest::collection::vec(2u64..30, 0..3)) {
        let mut g = GroupSummary::free(free);
        for t in torsion {
            g = g.direct_sum(&GroupSummary::cyclic(t));
        }
        prop_assert_eq!(g.to_string().parse::<GroupSummary>().unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn loop_classes_do_not_depend_on_the_seed(cycle_seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(cycle_seed);
        let u = random_loop_cycle(&mut rng, 2, 1);
        let b = BiChain::product(&u, &u).unwrap();
        let class = |seed| {
            let moved = perturb_translate(&b, seed, &q_frac(1, 50)).unwrap();
            loop_class_torus(&compose_loops(&chain_intersection(&moved).unwrap()).unwrap()).unwrap()
        };
        prop_assert_eq!(class(s1), class(s2));
    }
}
