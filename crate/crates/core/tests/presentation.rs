use std::sync::Arc;

use pushforward::presentation::{
    ansatz_row, build_row_system, hmp_matrix, pullback_generators, verify_c1, verify_c2, HmpOptions, MapGermProblem,
    PresentationMatrix,
};
use pushforward::ring::{parse_polynomial, parse_polynomial_list, Polynomial, RingContext};
use pushforward::stdbasis::{eliminate, equal, Ideal};
use pushforward::Error;

fn problem(vars: &[&str], ideal: &str, map: &str) -> MapGermProblem {
    let src = RingContext::local(vars.iter().copied()).unwrap();
    let i = parse_polynomial_list(&src, ideal).unwrap();
    let f = parse_polynomial_list(&src, map).unwrap();
    MapGermProblem::with_default_target(&src, i, f).unwrap()
}

fn matrix(p: &MapGermProblem, rows: &[&[&str]]) -> PresentationMatrix {
    let t = p.target();
    let entries = rows.iter().map(|r| r.iter().map(|e| parse_polynomial(t, e).unwrap()).collect()).collect();
    PresentationMatrix::new(Arc::new(p.clone()), pullback_generators(p).unwrap(), entries).unwrap()
}

fn det2(m: &PresentationMatrix) -> Polynomial {
    &(m.entry(0, 0) * m.entry(1, 1)) - &(m.entry(0, 1) * m.entry(1, 0))
}

fn principal(p: &Polynomial) -> Ideal {
    Ideal::new(p.context(), vec![p.clone()]).unwrap()
}

#[test]
fn cross_cap_generators_and_matrix() {
    let p = problem(&["x", "y"], "", "x, y^2, x*y");
    let g = pullback_generators(&p).unwrap();
    let shown: Vec<String> = g.generators().iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["1", "y"]);
    let m = hmp_matrix(&p, &HmpOptions::default()).unwrap();
    assert_eq!(m.size(), 2);
    assert!(verify_c1(&m).unwrap());
    assert!(verify_c2(&m));
    let expected = parse_polynomial(p.target(), "Y^2 - X1^2*X2").unwrap();
    assert!(equal(&principal(&det2(&m)), &principal(&expected)).unwrap());
}

#[test]
fn hand_written_cross_cap_matrix_passes_and_perturbation_fails() {
    let p = problem(&["x", "y"], "", "x, y^2, x*y");
    let good = matrix(&p, &[&["Y", "-X1"], &["-X1*X2", "Y"]]);
    assert!(verify_c1(&good).unwrap());
    assert!(verify_c2(&good));
    let bad = matrix(&p, &[&["Y", "-X1 + 1"], &["-X1*X2", "Y"]]);
    assert!(!verify_c1(&bad).unwrap());
    let off = matrix(&p, &[&["Y", "Y"], &["-X1*X2", "Y"]]);
    assert!(!verify_c2(&off));
}

#[test]
fn cusp_curve_image() {
    let p = problem(&["x"], "", "x^2, x^3");
    let m = hmp_matrix(&p, &HmpOptions::default()).unwrap();
    assert_eq!(m.size(), 2);
    // elimination oracle for the image
    let big = RingContext::local(["x", "X1", "Y"]).unwrap();
    let graph = Ideal::new(&big, parse_polynomial_list(&big, "X1 - x^2, Y - x^3").unwrap()).unwrap();
    let image = eliminate(&graph, &[0]).unwrap();
    let det = det2(&m);
    let det = det.embed(image.context(), &[0, 1]).unwrap();
    assert!(equal(&principal(&det), &image).unwrap());
}

#[test]
fn isomorphic_projection_has_one_generator() {
    let p = problem(&["x"], "", "x, x^2");
    let m = hmp_matrix(&p, &HmpOptions::default()).unwrap();
    assert_eq!(m.size(), 1);
    assert_eq!(m.entry(0, 0).to_string(), "Y - X1^2");
}

#[test]
fn non_finite_projection_is_reported() {
    let p = problem(&["x", "y"], "", "x*y, x");
    assert_eq!(pullback_generators(&p).unwrap_err(), Error::NotFinite);
    assert!(matches!(hmp_matrix(&p, &HmpOptions::default()), Err(Error::NotFinite)));
}

#[test]
fn degree_cap_is_reported() {
    let p = problem(&["x"], "", "x^2, x^3");
    let opts = HmpOptions { max_degree: 1, ..HmpOptions::default() };
    // the cusp needs degree 2 (the entry X1^2 in the relation Y g_2 = X1^2 g_1)
    assert!(matches!(hmp_matrix(&p, &opts), Err(Error::DegreeCapExceeded { last_degree: 1, .. })));
}

#[test]
fn row_systems_have_the_fixed_term_on_the_right() {
    let p = problem(&["x", "y"], "", "x, y^2, x*y");
    let g = pullback_generators(&p).unwrap();
    let row = ansatz_row(0, 1, 2, 2, false);
    let rs = build_row_system(&p, &g, &row, 4);
    assert_eq!(rs.unknowns.len(), row.unknown_count());
    assert!(!rs.system.is_empty());
}

#[test]
fn thread_count_does_not_change_the_result() {
    let p = problem(&["x", "y"], "", "x^2, y^2, x^3 + y^3 + x*y");
    let a = hmp_matrix(&p, &HmpOptions { threads: Some(1), ..HmpOptions::default() }).unwrap();
    let b = hmp_matrix(&p, &HmpOptions { threads: Some(4), ..HmpOptions::default() }).unwrap();
    assert_eq!(a.entries(), b.entries());
}

#[test]
fn low_degree_presentation_for_a_curve_on_a_surface() {
    for k in 1..=3u32 {
        let ideal = format!("z - x^{k}*y");
        let p = problem(&["x", "y", "z"], &ideal, "x, y^2 + x*z, z");
        let m = hmp_matrix(&p, &HmpOptions::default()).unwrap();
        println!("k={k}\n{m}degrees {:?}", m.row_degrees());
        assert!(m.search_degrees().iter().all(|&d| d <= k + 2));
        assert!(m.max_entry_degree() <= k + 2);
        assert!(verify_c1(&m).unwrap());
        assert!(verify_c2(&m));
    }
}
