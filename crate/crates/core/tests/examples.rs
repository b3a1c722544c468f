//! Structural checks over the built-in example library.

use std::sync::Arc;

use cesymp::builtins;
use cesymp::exterior::binomial;
use cesymp::{fixed_subcomplex, AlgebraFile, CeDifferential, Cohomology, Subcomplex};

fn full(name: &str) -> Subcomplex {
    let file = builtins::get(name).unwrap();
    let d = Arc::new(CeDifferential::new(&file.algebra().unwrap()).unwrap());
    Subcomplex::full(&d)
}

fn invariant(name: &str) -> Subcomplex {
    let file = builtins::get(name).unwrap();
    let d = Arc::new(CeDifferential::new(&file.algebra().unwrap()).unwrap());
    fixed_subcomplex(&d, &file.action()).unwrap()
}

fn betti(complex: &Subcomplex) -> Vec<usize> {
    Cohomology::compute(complex).unwrap().result().betti_numbers()
}

/// Betti numbers of a direct sum are the convolution of the factors.
fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn differential_squares_to_zero_on_every_example() {
    for name in builtins::names() {
        let complex = full(&name);
        let d = complex.full_differential();
        for k in 0..d.dim() {
            assert!(d.matrix(k + 1).mul(d.matrix(k)).is_zero(), "{name} degree {k}");
        }
        let inv = invariant(&name);
        for k in 0..inv.top_degree() {
            assert!(
                inv.differential(k + 1).mul(inv.differential(k)).is_zero(),
                "{name} invariant degree {k}"
            );
        }
    }
}

#[test]
fn torus_betti_numbers_are_binomial() {
    for n in 2..=6 {
        let expected: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
        assert_eq!(betti(&full(&format!("torus-{n}"))), expected);
    }
}

#[test]
fn known_betti_numbers() {
    assert_eq!(betti(&full("heis3")), vec![1, 2, 2, 1]);
    assert_eq!(betti(&full("kt")), kunneth(&[1, 2, 2, 1], &[1, 1]));
    assert_eq!(betti(&full("kt")), vec![1, 3, 4, 3, 1]);
    assert_eq!(betti(&invariant("paper-gamma")), vec![1, 1, 0, 1, 1]);
    assert_eq!(betti(&full("iwasawa")), vec![1, 4, 8, 10, 8, 4, 1]);
    assert_eq!(betti(&full("h-product")), kunneth(&betti(&full("iwasawa")), &[1, 2, 1]));
}

#[test]
fn poincare_duality() {
    // every example is nilpotent or unimodular
    for name in builtins::names() {
        let b = betti(&full(&name));
        let n = b.len() - 1;
        for k in 0..=n {
            assert_eq!(b[k], b[n - k], "{name} degree {k}");
        }
    }
}

#[test]
fn euler_characteristic_identity() {
    for name in builtins::names() {
        for complex in [full(&name), invariant(&name)] {
            let result = Cohomology::compute(&complex).unwrap().result().clone();
            assert!(result.euler_identity_holds(), "{name}");
            let alternating: i64 = complex
                .dims()
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            assert_eq!(result.euler_characteristic(), alternating, "{name}");
        }
        // a nonzero Lie algebra has Euler characteristic zero
        assert_eq!(
            Cohomology::compute(&full(&name))
                .unwrap()
                .result()
                .euler_characteristic(),
            0
        );
    }
}

#[test]
fn invariant_betti_bounded_by_full() {
    for name in builtins::names() {
        for (k, (a, b)) in betti(&invariant(&name)).iter().zip(betti(&full(&name))).enumerate() {
            assert!(*a <= b, "{name} degree {k}");
        }
    }
}

#[test]
fn parse_serialize_round_trip() {
    for name in builtins::names() {
        let file = builtins::get(&name).unwrap();
        let text = file.to_json_pretty();
        let back = AlgebraFile::parse_str(&text, &name).unwrap();
        assert_eq!(back, file, "{name}");
        assert_eq!(back.to_json_pretty(), text);
        assert_eq!(back.digest(), file.digest());
    }
}

#[test]
fn parse_from_disk() {
    let dir = std::env::temp_dir().join(format!("cesymp-examples-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gamma.json");
    std::fs::write(&path, builtins::paper_gamma().to_json_pretty()).unwrap();
    let file = AlgebraFile::parse(&path).unwrap();
    assert_eq!(file, builtins::paper_gamma());
    assert!(AlgebraFile::parse(&dir.join("missing.json")).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
