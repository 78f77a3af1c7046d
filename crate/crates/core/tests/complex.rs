use braidcover::action;
use braidcover::braid::{self, BraidWord};
use braidcover::complex::{self, GenStatus, OrbitComplex, SquareKind};
use braidcover::covering::{rho, rho3, rho_tilde};
use braidcover::homlift::SurfaceModel;
use braidcover::rewrite::Budget;
use braidcover::verify::{expected_edges, short_name};
use braidcover::Error;

#[test]
fn six_point_complexes() {
    let (six, eight) = expected_edges();
    let a = OrbitComplex::bw(&rho(6, &[2, 3]).unwrap(), 100).unwrap();
    assert_eq!(a.vertex_count(), 6);
    assert_eq!(a.edge_labels(short_name), six);
    let b = OrbitComplex::bw(&rho_tilde(6, &[4]).unwrap(), 100).unwrap();
    assert_eq!(b.vertex_count(), 8);
    assert_eq!(b.edge_labels(short_name), eight);
    let verticals = b.edges().filter(|c| b.orbit.labels[c.gen] == "d4").count();
    assert_eq!(verticals, 4);
}

#[test]
fn tree_and_lasso_counts() {
    for c in [rho(6, &[2, 3]).unwrap(), rho_tilde(6, &[4]).unwrap(), rho(8, &[2, 3]).unwrap()] {
        let cx = OrbitComplex::bw(&c, 1000).unwrap();
        let tree = cx.cells.iter().filter(|c| c.tree).count();
        assert_eq!(tree, cx.vertex_count() - 1);
        // Every (vertex, generator) incidence lies on exactly one cell.
        let incidences: usize = cx.cells.iter().map(|c| if c.is_loop() { 1 } else { 2 }).sum();
        assert_eq!(incidences, cx.vertex_count() * cx.orbit.generators.len());
        let lassos = cx.schreier_generators();
        assert_eq!(lassos.len(), cx.cells.len() - tree);
        for l in &lassos {
            assert!(action::is_liftable(&l.word, &c).unwrap(), "{}", l.word);
        }
    }
}

#[test]
fn base_loops_are_lassos() {
    let c = rho(6, &[2, 3]).unwrap();
    let cx = OrbitComplex::bw(&c, 100).unwrap();
    let words: Vec<BraidWord> = cx.schreier_generators().into_iter().map(|l| l.word).collect();
    assert!(words.contains(&BraidWord::gen(6, 0, 1).unwrap()));
    assert!(words.contains(&BraidWord::gen(6, 1, 3).unwrap()));
}

#[test]
fn single_vertex_orbit_has_only_loops() {
    let cx = OrbitComplex::bw(&rho3(7).unwrap(), 100).unwrap();
    assert_eq!(cx.vertex_count(), 1);
    assert!(cx.cells.iter().all(|c| c.is_loop()));
    assert_eq!(cx.schreier_generators().len(), cx.orbit.generators.len());
}

#[test]
fn non_involutive_generators_are_refused() {
    let c = rho(6, &[2, 3]).unwrap();
    let gens: Vec<BraidWord> = (0..5).map(|i| BraidWord::gen(6, i, 1).unwrap()).collect();
    let labels: Vec<String> = (0..5).map(|i| format!("b{i}")).collect();
    let r = OrbitComplex::build(&c, &gens, &labels, 1_000_000);
    assert!(matches!(r, Err(Error::NonInvolutive(_))), "{:?}", r.map(|x| x.vertex_count()));
}

#[test]
fn squares_have_allowed_labels() {
    let a = OrbitComplex::bw(&rho(6, &[2, 3]).unwrap(), 100).unwrap();
    let sq = a.squares().unwrap();
    assert_eq!(sq.len(), 1);
    assert_eq!(sq[0].kind, SquareKind::Commuting);
    let b = OrbitComplex::bw(&rho_tilde(6, &[4]).unwrap(), 100).unwrap();
    let sq = b.squares().unwrap();
    assert_eq!(sq.len(), 3);
    assert!(sq.iter().all(|s| s.kind != SquareKind::Other));
    assert_eq!(sq.iter().filter(|s| s.kind == SquareKind::Delta4Beta4).count(), 1);
}

#[test]
fn loop_lassos_do_not_depend_on_tails() {
    let c = rho(8, &[2, 3]).unwrap();
    let cx = OrbitComplex::bw(&c, 1000).unwrap();
    let r = cx.tail_independence(&SurfaceModel::build(&c).unwrap()).unwrap();
    assert!(r.compared > 0);
    assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
}

#[test]
fn dot_marks_the_tree() {
    let cx = OrbitComplex::bw(&rho(6, &[2, 3]).unwrap(), 100).unwrap();
    let dot = cx.to_dot(short_name);
    assert!(dot.starts_with("graph orbit {"));
    assert_eq!(dot.matches("style=bold").count(), 5);
    assert_eq!(dot.matches(" -- ").count(), cx.cells.len());
}

#[test]
fn generating_set_lists() {
    let (_, a6) = complex::generating_set(6, 'a').unwrap();
    let names: Vec<&str> = a6.iter().map(|(s, _)| s.as_str()).collect();
    assert_eq!(names, ["b0", "b2", "b4", "d4"]);
    let (_, a8) = complex::generating_set(8, 'a').unwrap();
    assert_eq!(a8.last().unwrap().0, "d6");
    let (base, b6) = complex::generating_set(6, 'b').unwrap();
    let names: Vec<&str> = b6.iter().map(|(s, _)| s.as_str()).collect();
    assert_eq!(names, ["b0", "b2", "[b4]b3^-1"]);
    for (_, w) in &b6 {
        assert!(action::is_liftable(w, &base).unwrap());
    }
    assert!(complex::generating_set(9, 'a').is_err());
}

#[test]
fn generation_at_six_points() {
    let budget = Budget {
        states: 100_000,
        ..Budget::default()
    };
    let r = complex::verify_generation(6, 'a', budget, 20_000).unwrap();
    assert_eq!(r.lassos.len(), 25);
    assert_eq!(r.count(GenStatus::Certified), 25);
}

#[test]
fn handle_pair_tails() {
    let c = rho(8, &[2, 3, 7]).unwrap();
    let (lhs, literal) = braid::handle_pair(8).unwrap();
    assert!(action::is_liftable(&lhs, &c).unwrap());
    assert!(!action::is_liftable(&literal, &c).unwrap());
    let (_, rhs) = braid::handle_pair_to_b3(8).unwrap();
    let m = SurfaceModel::build(&c).unwrap();
    assert_eq!(m.action(&lhs).unwrap(), m.action(&rhs).unwrap());
    assert!(!braid::words_equal(&lhs, &rhs).unwrap());
}
