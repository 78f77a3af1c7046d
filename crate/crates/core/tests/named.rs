use braidcover::braid::{delta4, delta6, delta_k, words_equal};
use braidcover::covering::rho;
use braidcover::is_liftable;

// The general rotation formula does not specialize to the rotations about
// d4 and d6: the words differ as braids and are not even liftable.
#[test]
fn general_rotation_formula_is_not_a_specialization() {
    for n in [6, 8, 10] {
        let c = rho(n, &[2, 3]).unwrap();
        let d4 = delta4(n).unwrap();
        let k4 = delta_k(4, n).unwrap();
        assert_eq!((d4.len(), k4.len()), (19, 17));
        assert!(!words_equal(&d4, &k4).unwrap());
        assert!(is_liftable(&d4, &c).unwrap());
        assert!(!is_liftable(&k4, &c).unwrap());
        if n >= 8 {
            let d6 = delta6(n).unwrap();
            let k6 = delta_k(6, n).unwrap();
            assert!(!words_equal(&d6, &k6).unwrap());
            assert!(is_liftable(&d6, &c).unwrap());
            assert!(!is_liftable(&k6, &c).unwrap());
        }
    }
}
