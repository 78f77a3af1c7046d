use braidcover::action::ColoredBraid;
use braidcover::braid::{self, BraidWord, Letter};
use braidcover::covering::{rho, rho3, Coloring};
use braidcover::homlift::{RelativeModel, SurfaceModel};
use braidcover::perm::Transposition;
use braidcover::rewrite::{self, Budget, Outcome, RewriteStep, Rewriter, StepKind};
use proptest::prelude::*;

fn cb(c: &Coloring, w: &str) -> ColoredBraid {
    ColoredBraid::new(c.clone(), braid::parse_word(w, c.len()).unwrap()).unwrap()
}

fn small() -> Budget {
    Budget {
        states: 50_000,
        ..Budget::default()
    }
}

#[test]
fn braid_relation_windows_are_braid_equal() {
    // Every three-letter window on adjacent generators that admits a
    // rewrite must keep the braid; the others must be refused.
    let plain = Coloring::new(2, vec![Transposition::t(1, 2); 4]).unwrap();
    let mut rewritten = 0;
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        for a in [1i8, -1] {
            for b in [1i8, -1] {
                for c in [1i8, -1] {
                    let w = vec![Letter::new(i, a), Letter::new(j, b), Letter::new(i, c)];
                    let mut r = Rewriter::new(plain.clone(), w.clone());
                    let ok = r.apply(RewriteStep::new(StepKind::BraidRel, 0, i, a)).is_ok();
                    let expected = (a == b && b == c) || c == -a;
                    assert_eq!(ok, expected, "{w:?}");
                    if ok {
                        rewritten += 1;
                        let before = BraidWord::new(4, w).unwrap();
                        let after = BraidWord::new(4, r.word().to_vec()).unwrap();
                        assert!(braid::words_equal(&before, &after).unwrap());
                    }
                }
            }
        }
    }
    assert_eq!(rewritten, 12);
}

#[test]
fn moves_need_the_right_colors() {
    let c = rho3(6).unwrap();
    // (12)(12): equal colors, no move applies at 0.
    let mut r = Rewriter::new(c.clone(), vec![]);
    assert!(r.apply(RewriteStep::new(StepKind::MInsert, 0, 0, 1)).is_err());
    assert!(r.apply(RewriteStep::new(StepKind::PInsert, 0, 0, 1)).is_err());
    // (12)(23) interact: M applies, P does not.
    assert!(r.apply(RewriteStep::new(StepKind::PInsert, 0, 1, 1)).is_err());
    r.apply(RewriteStep::new(StepKind::MInsert, 0, 1, 1)).unwrap();
    assert_eq!(r.word().len(), 3);
    r.apply(RewriteStep::new(StepKind::MDelete, 0, 1, 1)).unwrap();
    assert!(r.word().is_empty());
    // (14)(23) are disjoint.
    let d = rho(6, &[2]).unwrap();
    let mut r = Rewriter::new(d, vec![]);
    r.apply(RewriteStep::new(StepKind::PInsert, 0, 2, -1)).unwrap();
    assert_eq!(r.word(), &[Letter::new(2, -1); 2]);
}

#[test]
fn small_certificates() {
    let c = rho(6, &[2, 3]).unwrap();
    let out = rewrite::in_reduced_kernel(&braid::parse_word("b3^2", 6).unwrap(), &c, small()).unwrap();
    let cert = out.certificate().expect("b3^2 is a P move");
    assert!(rewrite::replay(cert).unwrap());
    assert_eq!(cert.local_moves(), 1);

    let c3 = rho3(6).unwrap();
    let out = rewrite::in_reduced_kernel(&braid::parse_word("b1^3", 6).unwrap(), &c3, small()).unwrap();
    assert!(rewrite::replay(out.certificate().unwrap()).unwrap());

    // Braid-trivial words need no local move at all.
    let out = rewrite::in_reduced_kernel(&braid::parse_word("d4 d4^-1", 6).unwrap(), &c, small()).unwrap();
    assert_eq!(out.certificate().unwrap().local_moves(), 0);
}

#[test]
fn not_liftable_is_an_error() {
    let c = rho(6, &[2, 3]).unwrap();
    assert!(rewrite::in_reduced_kernel(&braid::parse_word("b1", 6).unwrap(), &c, small()).is_err());
}

#[test]
fn tampered_certificates_are_rejected() {
    let c = rho(6, &[2, 3]).unwrap();
    let out = rewrite::in_reduced_kernel(&braid::parse_word("b3^2", 6).unwrap(), &c, small()).unwrap();
    let mut cert = out.certificate().unwrap().clone();
    cert.steps[0].kind = StepKind::MDelete;
    assert!(!rewrite::replay(&cert).unwrap());
    let mut cert = out.certificate().unwrap().clone();
    cert.end = cb(&c, "b3");
    assert!(!rewrite::replay(&cert).unwrap());
}

#[test]
fn reversed_and_composed_certificates_replay() {
    let c = rho(6, &[2, 3]).unwrap();
    let a = cb(&c, "b2 b3^2 b2^-1");
    let e = cb(&c, "e");
    let Outcome::Certified(cert) = rewrite::equivalent(&a, &e, small()).unwrap() else {
        panic!("conjugate of a P move");
    };
    assert!(rewrite::replay(&cert).unwrap());
    let back = cert.reversed().unwrap();
    assert!(rewrite::replay(&back).unwrap());
    assert_eq!(back.end, a);
    let round = cert.clone().then(&back).unwrap();
    assert!(rewrite::replay(&round).unwrap());
    assert!(cert.clone().then(&cert).is_err());
}

#[test]
fn embedded_certificates_replay() {
    let c = rho(6, &[2, 3]).unwrap();
    let inner = rewrite::in_reduced_kernel(&braid::parse_word("b3^2", 6).unwrap(), &c, small()).unwrap();
    let inner = inner.certificate().unwrap();
    // b0 fixes every coloring, so the same segment sits after it.
    let outer = cb(&c, "b0 b3^2 b0^-1");
    let big = inner.embed(&outer, 1).unwrap();
    assert!(rewrite::replay(&big).unwrap());
    assert_eq!(big.end.word, braid::parse_word("b0 b0^-1", 6).unwrap().letters());
    assert!(inner.embed(&outer, 0).is_err());
}

#[test]
fn commutator_certificate() {
    let c = rho(6, &[2, 3]).unwrap();
    let w = braid::parse_word("d4 b4 d4^-1 b4^-1", 6).unwrap();
    assert!(!braid::is_trivial(&w));
    let out = rewrite::in_reduced_kernel(&w, &c, Budget::default()).unwrap();
    let cert = out.certificate().expect("found within the default budget");
    assert!(rewrite::replay(cert).unwrap());
    assert!(cert.local_moves() > 0);
}

#[test]
fn handle_triviality_matches_artin() {
    for s in ["b0 b1 b0 b1^-1 b0^-1 b1^-1", "b0 b2 b0^-1 b2^-1", "d4 d4^-1", "b0 b1", "d4 b4 d4^-1 b4^-1"] {
        let w = braid::parse_word(s, 6).unwrap();
        assert_eq!(rewrite::trivial_by_handles(w.letters(), 100_000), Some(braid::is_trivial(&w)), "{s}");
    }
}

fn random_steps(c: &Coloring, word: Vec<Letter>, picks: &[(usize, usize)]) -> rewrite::RewriteCertificate {
    let start = ColoredBraid {
        source: c.clone(),
        word: word.clone(),
    };
    let mut r = Rewriter::new(c.clone(), word);
    for &(at, k) in picks {
        let cur = ColoredBraid {
            source: c.clone(),
            word: r.word().to_vec(),
        };
        let options = rewrite::applicable(&cur, at % (cur.word.len() + 1));
        if !options.is_empty() {
            r.apply(options[k % options.len()]).unwrap();
        }
    }
    let (word, steps) = r.into_parts();
    rewrite::RewriteCertificate {
        end: ColoredBraid {
            source: c.clone(),
            word,
        },
        start,
        steps,
    }
}

fn letters(n: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..n - 1, prop::bool::ANY), 0..max)
        .prop_map(|v| v.into_iter().map(|(i, s)| Letter::new(i, if s { 1 } else { -1 })).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_walks_replay_and_keep_endpoints(
        w in letters(6, 10),
        picks in prop::collection::vec((0usize..20, 0usize..64), 1..16),
    ) {
        let c = rho(6, &[2, 4]).unwrap();
        let cert = random_steps(&c, w, &picks);
        prop_assert!(rewrite::replay(&cert).unwrap());
        prop_assert_eq!(cert.start.target(), cert.end.target());
        prop_assert!(rewrite::replay(&cert.reversed().unwrap()).unwrap());
    }

    #[test]
    fn moves_keep_both_homology_actions(
        tail in prop::collection::vec(0usize..64, 1..4),
        at in 0usize..200,
        k in 0usize..64,
    ) {
        let c = rho(8, &[2, 3]).unwrap();
        let lassos = braidcover::complex::OrbitComplex::bw(&c, 1000).unwrap().schreier_generators();
        let mut w = BraidWord::identity(8);
        for t in tail {
            w = w.mul(&lassos[t % lassos.len()].word).unwrap();
        }
        let cur = ColoredBraid::new(c.clone(), w.clone()).unwrap();
        let options: Vec<_> = rewrite::applicable(&cur, at % (w.len() + 1))
            .into_iter()
            .filter(|s| s.kind.is_local_move())
            .collect();
        prop_assume!(!options.is_empty());
        let mut r = Rewriter::new(c.clone(), w.letters().to_vec());
        r.apply(options[k % options.len()]).unwrap();
        let moved = BraidWord::new(8, r.word().to_vec()).unwrap();
        let closed = SurfaceModel::build(&c).unwrap();
        let relative = RelativeModel::build(&c).unwrap();
        prop_assert_eq!(closed.action(&w).unwrap(), closed.action(&moved).unwrap());
        prop_assert_eq!(relative.action(&w).unwrap(), relative.action(&moved).unwrap());
    }
}
