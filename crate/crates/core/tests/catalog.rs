use braidcover::action;
use braidcover::catalog::{self, CensusLimits, CensusMode, Derivation, GeneratorSet, MoveId};
use braidcover::covering::{rho, rho_tilde};
use braidcover::homlift::SurfaceModel;
use braidcover::rewrite::Budget;
use braidcover::Error;

#[test]
fn standard_moves_pass() {
    for id in [MoveId::I, MoveId::II, MoveId::V] {
        for n in [8, 10] {
            let cb = catalog::move_lhs(id, n).unwrap();
            assert_eq!(cb.source, catalog::move_spec(id).unwrap().context.instantiate(n).unwrap());
        }
    }
    let i = catalog::move_lhs(MoveId::I, 8).unwrap();
    assert_eq!(i.source.canonical_text(), "d=4: (12)(12)(14)(14)(23)(23)(23)(23)");
    assert_eq!(i.braid().to_string(), "b2");
    assert_eq!(catalog::move_lhs(MoveId::II, 8).unwrap().braid().to_string(), "b0");
}

#[test]
fn move_v_sign() {
    // Only the negative trailing crossing is trivial on homology.
    let c = rho(8, &[2, 3]).unwrap();
    let m = SurfaceModel::build(&c).unwrap();
    let neg = braidcover::parse_word("d4 b4^-1", 8).unwrap();
    let pos = braidcover::parse_word("d4 b4", 8).unwrap();
    assert!(m.action(&neg).unwrap().is_identity());
    assert!(!m.action(&pos).unwrap().is_identity());
}

#[test]
fn transcribed_moves() {
    for n in [8, 10] {
        assert!(catalog::move_lhs(MoveId::III, n).is_ok());
    }
    for n in [12, 14] {
        let chk = catalog::check_move(MoveId::IV, n).unwrap();
        assert!(chk.liftable && !chk.homology_trivial);
        assert!(matches!(catalog::move_lhs(MoveId::IV, n), Err(Error::MoveData(_))));
    }
}

#[test]
fn width_is_checked() {
    assert!(matches!(catalog::move_lhs(MoveId::V, 5), Err(Error::MoveWidth(..))));
    assert!(matches!(catalog::move_lhs(MoveId::IV, 10), Err(Error::MoveWidth(..))));
}

#[test]
fn kernel_list_at_genus_two() {
    let n = 10;
    let list = catalog::kernel_generator_list(n).unwrap();
    assert_eq!(list.len(), 2 + 256 + 16);
    let c = rho(n, &[2, 3]).unwrap();
    let m = SurfaceModel::build(&c).unwrap();
    for (name, w) in &list {
        assert!(action::is_liftable(w, &c).unwrap(), "{name}");
        assert_eq!(m.action(w).unwrap().det(), 1);
        if !name.starts_with('B') {
            assert!(m.action(w).unwrap().is_identity(), "{name}");
        }
    }
    assert!(catalog::kernel_generator_list(9).is_err());
}

#[test]
fn derivations() {
    let budget = Budget {
        states: 1_000,
        ..Budget::default()
    };
    for id in [MoveId::I, MoveId::V] {
        assert!(matches!(catalog::derive_move(id, 8, budget).unwrap(), Derivation::Obstructed { .. }));
    }
    assert!(matches!(catalog::derive_move(MoveId::III, 8, budget).unwrap(), Derivation::Unknown { .. }));
    let st = catalog::stabilized_context(MoveId::I, 8).unwrap();
    assert_eq!(st.source.degree(), 5);
    assert_eq!(st.source.len(), 10);
}

#[test]
fn seeded_census_at_six_points() {
    let mode = CensusMode::Seeded {
        seeds: vec![rho(6, &[2, 3]).unwrap(), rho_tilde(6, &[4]).unwrap()],
        gens: GeneratorSet::Bw,
    };
    let r = catalog::census(6, 4, &mode, CensusLimits::default()).unwrap();
    let sizes: Vec<usize> = r.orbits.iter().map(|o| o.size).collect();
    assert_eq!(sizes, [6, 8]);
    assert_eq!(r.enumerated, 14);
}

#[test]
fn exhaustive_census_degree_four() {
    let run = || catalog::census(6, 4, &CensusMode::Exhaustive, CensusLimits::default()).unwrap();
    let a = run();
    assert!(a.classified_by_monodromy);
    assert_eq!(a.orbits.iter().map(|o| o.size).sum::<usize>(), a.enumerated);
    assert_eq!(a.to_json(), run().to_json());
    for o in &a.orbits {
        let st = o.schreier.as_ref().unwrap();
        assert_eq!(st.certified + st.unknown, st.examined);
    }
}

#[test]
fn census_limits() {
    assert!(catalog::census(7, 4, &CensusMode::Exhaustive, CensusLimits::default()).is_err());
    assert!(catalog::census(6, 3, &CensusMode::Exhaustive, CensusLimits::default()).is_err());
}
