mod common;

use common::*;
use heegaard::chains::{
    boundary_on_family, corner_boundary, is_domain_joining, s_count, Domain, PointSum,
};
use heegaard::diagram::{CurveId, VertexId};
use heegaard::fixtures::{named, FIXTURES};
use heegaard::gen_domains::{enumerate_positive_domains, solve_domains, Bounds};
use heegaard::io::{emit, parse, parse_data, parse_polygon};
use heegaard::maslov::mu_iota;
use heegaard::measures::{euler_measure, point_measure_at};
use heegaard::nice::{check_positivity_bound, index_zero_triangle_domains, triangle_decomposition};
use heegaard::{HeegaardDiagram, Quarter};
use proptest::prelude::*;

fn fixture_index() -> impl Strategy<Value = usize> {
    0..FIXTURES.len()
}

fn load(i: usize) -> HeegaardDiagram {
    named(FIXTURES[i].name)
}

#[test]
fn corner_counts_sum_to_four_per_vertex() {
    for (name, d) in all_fixtures() {
        let corners: usize = d.regions().iter().map(|r| r.corners.len()).sum();
        assert_eq!(corners, 4 * d.vertices().len(), "{name}");
    }
}

#[test]
fn files_round_trip() {
    for f in FIXTURES {
        let text = emit(&f.data());
        let again = emit(parse(&text).unwrap().data());
        assert_eq!(text, again, "{}", f.name);
        assert_eq!(parse_data(&text).unwrap(), f.data());
    }
}

#[test]
fn solving_is_deterministic_and_sound() {
    for (name, d) in all_fixtures() {
        for p in standard_polygons(&d) {
            let Ok(a) = solve_domains(&d, &p) else { continue };
            let b = solve_domains(&d, &p).unwrap();
            assert_eq!(a, b, "{name}");
            assert!(is_domain_joining(&a.particular, &p));
            let bounds = Bounds { max_coeff: 2, avoid: d.basepoint_regions(), require_nonzero: false };
            for x in enumerate_positive_domains(&a, &bounds) {
                assert!(is_domain_joining(&x, &p), "{name}: {x}");
            }
        }
    }
}

#[test]
fn counted_triangles_decompose_and_pass_the_census() {
    for (name, gens) in [("torus_triple", "x,y,z"), ("torus_triple_double", "x+x',y+y',z+z'")] {
        let d = named(name);
        let p = parse_polygon(&d, gens).unwrap();
        let found = index_zero_triangle_domains(&d, &p, 2).unwrap();
        assert!(!found.is_empty());
        for dom in &found {
            let parts = triangle_decomposition(dom, &p).unwrap().expect("counted domains decompose");
            assert_eq!(parts.len(), d.curves_per_family());
            let mut sum = Domain::zero(&d);
            let mut curves = Vec::new();
            for t in &parts {
                let set: Vec<bool> = t.coeffs().iter().map(|&c| c == 1).collect();
                assert!(t.coeffs().iter().all(|&c| c == 0 || c == 1));
                let corners = oracle_embedded_triangle(&d, &p, &set).expect("embedded triangle");
                curves.extend(corners.iter().flat_map(|&v| d.vertex(v).curves));
                sum = sum.checked_add(t).unwrap();
            }
            curves.sort();
            curves.dedup();
            assert_eq!(curves.len(), 3 * d.curves_per_family());
            assert_eq!(&sum, dom);
            assert_eq!(check_positivity_bound(dom, &p).unwrap().equality_census, Some(true));
        }
    }
}

#[test]
fn decomposition_matches_subset_search() {
    let d = named("torus_triple_double");
    let p = parse_polygon(&d, "x+x',y+y',z+z'").unwrap();
    let sol = solve_domains(&d, &p).unwrap();
    let bounds = Bounds { max_coeff: 3, avoid: d.basepoint_regions(), require_nonzero: true };
    let mut checked = 0;
    for dom in enumerate_positive_domains(&sol, &bounds) {
        if !mu_iota(&dom, &p).unwrap().1.is_zero() {
            continue;
        }
        let ours = triangle_decomposition(&dom, &p).unwrap().is_some();
        assert_eq!(ours, oracle_decomposes(&d, &p, dom.coeffs()), "{dom}");
        checked += 1;
    }
    assert!(checked > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(i in fixture_index(), seed in any::<u64>()) {
        let d = load(i);
        let dom = random_chain(&d, &mut rng(seed), 3);
        let total = (0..d.family_count())
            .map(|f| corner_boundary(&d, &boundary_on_family(&dom, f)))
            .fold(PointSum::new(), |a, b| a + b);
        prop_assert!(total.is_zero());
    }

    #[test]
    fn s_count_is_additive(i in fixture_index(), seed in any::<u64>()) {
        let d = load(i);
        let mut r = rng(seed);
        let a = random_chain(&d, &mut r, 3);
        let b = random_chain(&d, &mut r, 3);
        let n = d.family_count();
        for f in 0..n {
            let g = (f + 1) % n;
            if f != g {
                prop_assert_eq!(s_count(&a.checked_add(&b).unwrap(), f, g), s_count(&a, f, g) + s_count(&b, f, g));
            }
        }
    }

    #[test]
    fn side_boundary_restricts_to_the_next_generator(i in fixture_index(), seed in any::<u64>()) {
        let d = load(i);
        prop_assume!(d.family_count() >= 3);
        let mut r = rng(seed);
        for p in standard_polygons(&d) {
            let Ok(sol) = solve_domains(&d, &p) else { continue };
            let dom = random_domain(&sol, &mut r, 2);
            let n = p.len();
            for c in 0..n {
                let next = p.families()[(c + 1) % n];
                let restricted = corner_boundary(&d, &boundary_on_family(&dom, p.families()[c]))
                    .restricted(|v| d.vertex_on_family(v, next));
                prop_assert_eq!(restricted, PointSum::of_generator(&p.gens()[c]));
            }
        }
    }

    #[test]
    fn flipping_a_curve_changes_no_measure(i in fixture_index(), c in 0usize..6, seed in any::<u64>()) {
        let d = load(i);
        let c = CurveId(c % d.curves().len());
        let flipped = d.with_curve_reversed(c);
        let mut r = rng(seed);
        let dom = random_chain(&d, &mut r, 3);
        let moved = dom.transfer(&flipped).unwrap();
        prop_assert_eq!(euler_measure(&dom), euler_measure(&moved));
        for v in d.vertex_ids() {
            prop_assert_eq!(point_measure_at(&dom, v), point_measure_at(&moved, v));
        }
        for f in 0..d.family_count() {
            let before = boundary_on_family(&dom, f);
            let after = boundary_on_family(&moved, f);
            for a in d.arc_ids() {
                let name = &d.arc(a).name;
                let b = flipped.arc_by_name(name).unwrap();
                let sign = if d.arc(a).curve == c { -1 } else { 1 };
                prop_assert_eq!(before.mult(a) * sign, after.mult(b));
            }
            let names = |s: PointSum, g: &HeegaardDiagram| -> Vec<(String, i64)> {
                s.terms().map(|(v, m)| (g.vertex(v).name.clone(), m)).collect()
            };
            prop_assert_eq!(
                names(corner_boundary(&d, &before), &d),
                names(corner_boundary(&flipped, &after), &flipped)
            );
        }
        for p in standard_polygons(&d).into_iter().take(4) {
            let Ok(sol) = solve_domains(&d, &p) else { continue };
            let x = random_domain(&sol, &mut r, 2);
            let labels: Vec<String> = p.gens().iter().map(|g| g.label(&d)).collect();
            let q = parse_polygon(&flipped, &labels.join(",")).unwrap();
            prop_assert_eq!(mu_iota(&x, &p).unwrap(), mu_iota(&x.transfer(&flipped).unwrap(), &q).unwrap());
        }
    }

    #[test]
    fn surface_multiples_shift_mu_by_two(m in -5i64..=5, seed in any::<u64>()) {
        let d = named("s3_genus1");
        let p = parse_polygon(&d, "x,x").unwrap();
        let dom = random_domain(&solve_domains(&d, &p).unwrap(), &mut rng(seed), 4);
        let shifted = dom.checked_add(&Domain::surface(&d).scaled(m)).unwrap();
        prop_assert_eq!(
            mu_iota(&shifted, &p).unwrap().0,
            mu_iota(&dom, &p).unwrap().0 + Quarter::from_int(2 * m)
        );
    }

    #[test]
    fn lattice_members_stay_domains(i in fixture_index(), seed in any::<u64>()) {
        let d = load(i);
        let mut r = rng(seed);
        for p in standard_polygons(&d).into_iter().take(6) {
            let Ok(sol) = solve_domains(&d, &p) else { continue };
            let x = random_domain(&sol, &mut r, 5);
            prop_assert!(oracle_joins(&d, &p, x.coeffs()));
            prop_assert!(is_domain_joining(&x, &p));
        }
    }
}

#[test]
fn vertex_order_survives_flips() {
    for (name, d) in all_fixtures() {
        for c in 0..d.curves().len() {
            let f = d.with_curve_reversed(CurveId(c));
            for v in 0..d.vertices().len() {
                assert_eq!(d.vertex(VertexId(v)).name, f.vertex(VertexId(v)).name, "{name}");
            }
        }
    }
}
