//! Grid-level classifier invariants: parity soundness of recovered
//! indices and the interval gate.

use kleinian_rp::algebra::ParameterTriple;
use kleinian_rp::classifier::{
    classify, default_spec, enumerate_family, Family, FamilyMatch, Verdict, ALL_FAMILIES,
};
use kleinian_rp::config::Config;
use kleinian_rp::indices::ExtIndex;

fn side_ok(n: u32, t: ExtIndex) -> bool {
    match t {
        ExtIndex::Finite(p) => 2 * (n as u64 + p as u64) < n as u64 * p as u64,
        _ => true,
    }
}

/// No match ever violates a printed gcd or parity condition.
#[test]
fn parity_soundness_on_the_grid() {
    let cfg = Config::default();
    for fam in ALL_FAMILIES {
        for (triple, _) in enumerate_family(fam, &default_spec(fam), &cfg).unwrap() {
            let matches = match classify(&triple, &cfg) {
                Verdict::Discrete { matches } => matches,
                other => panic!("{fam}: {other:?}"),
            };
            for m in &matches {
                check_row_conditions(m);
            }
        }
    }
}

fn check_row_conditions(m: &FamilyMatch) {
    let fin = |e: Option<ExtIndex>| match e {
        Some(ExtIndex::Finite(k)) => Some(k),
        _ => None,
    };
    match m.family {
        Family::D1 => assert!(m.t_u().unwrap() >= ExtIndex::Finite(3)),
        Family::D2 => {
            assert!(m.n >= 5 && m.n % 2 == 1);
            assert!(m.t_u().unwrap() >= ExtIndex::Finite(4));
        }
        Family::D3 => {
            assert_eq!(m.n, 3);
            assert!(m.t_u().unwrap() >= ExtIndex::Finite(3));
        }
        Family::P1 => {
            assert!(m.n >= 4 && m.n.is_multiple_of(2));
            assert!(m.t_u().unwrap().is_even_class());
            assert!(side_ok(m.n, m.t_u().unwrap()));
            assert!(m.t_v().unwrap() >= ExtIndex::Finite(3));
        }
        Family::P2 => {
            assert!(m.n >= 4 && m.n.is_multiple_of(2));
            assert!(m.t_u().unwrap().is_odd());
            assert!(side_ok(m.n, m.t_u().unwrap()));
            assert!(m.t_v().unwrap() >= ExtIndex::Finite(3));
        }
        Family::P3 => {
            assert_eq!(m.n, 4);
            let k = fin(m.m).unwrap();
            assert!(k >= 5 && k % 2 == 1);
        }
        Family::P4 => {
            assert!(m.n % 2 == 1);
            assert!(m.t_u().unwrap().is_even_class());
            assert!(side_ok(m.n, m.t_u().unwrap()));
        }
        Family::P5 => {
            assert!(m.n % 2 == 1);
            assert!(m.t_u().unwrap().is_odd());
            assert!(side_ok(m.n, m.t_u().unwrap()));
        }
        Family::P6 => assert!(m.n >= 7 && m.n % 2 == 1),
        Family::P7 | Family::P8 => {
            assert!(m.n >= 5 && m.n % 2 == 1 && !m.n.is_multiple_of(3));
        }
        Family::P9 => {
            let k = fin(m.m).unwrap();
            assert!(k >= 7 && k % 2 == 1);
        }
        Family::P10 => {
            let k = fin(m.m).unwrap();
            assert!(k >= 8 && k.is_multiple_of(2) && !k.is_multiple_of(3));
        }
        Family::P11 => {
            let k = fin(m.m).unwrap();
            assert!(k >= 7 && k % 4 != 0);
        }
        _ => assert!(matches!(m.n, 3 | 5)),
    }
}

/// The gamma window gates every verdict except the two rows that sit
/// beyond it: P6 and P19 classify as discrete with gamma >= -bb'/4.
#[test]
fn interval_gate_with_documented_exceptions() {
    let cfg = Config::default();
    for fam in ALL_FAMILIES {
        for (triple, _) in enumerate_family(fam, &default_spec(fam), &cfg).unwrap() {
            let in_window = triple.gamma < 0.0
                || (triple.gamma > 0.0
                    && triple.gamma < -triple.beta * triple.beta_prime / 4.0);
            if let Verdict::Discrete { matches } = classify(&triple, &cfg) {
                if !in_window {
                    assert!(
                        matches
                            .iter()
                            .all(|m| matches!(m.family, Family::P6 | Family::P19)),
                        "{fam}: out-of-window discrete {matches:?}"
                    );
                }
            }
        }
    }
    // A gamma beyond the window that matches no row is out of scope.
    let v = classify(&ParameterTriple::new(-2.0, 3.0, 1.6), &cfg);
    assert!(matches!(v, Verdict::OutOfScope { .. }));
}
