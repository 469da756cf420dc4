use boundquiver::ar::enumerate_indecomposables;
use boundquiver::decompose::normalize_basis;
use boundquiver::families::{a_n, a_n_rad2, d_n, triangle};
use boundquiver::{
    decompose, end_is_local, hom_basis, hom_basis_dense, is_isomorphic, parse_presentation, path_basis, tensor,
    validate_module, Echelon, Error, FdAlgebra, Matrix, Presentation, Quiver, Rational, Representation,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(r: &Rational) -> BigRational {
    let (n, d) = r.numer_denom();
    BigRational::new(n, d)
}

fn rational() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![
        (-50i64..50, 1i64..20),
        (any::<i64>(), any::<i64>().prop_filter("nonzero", |d| *d != 0)),
        (
            prop_oneof![Just(i64::MAX), Just(i64::MIN), Just(i64::MIN + 1)],
            prop_oneof![Just(1i64), Just(-1), Just(i64::MAX)]
        ),
    ]
}

proptest! {
    #[test]
    fn rational_arithmetic_matches_bigrational(a in rational(), b in rational()) {
        let (x, y) = (Rational::new(a.0, a.1), Rational::new(b.0, b.1));
        let (bx, by) = (
            BigRational::new(BigInt::from(a.0), BigInt::from(a.1)),
            BigRational::new(BigInt::from(b.0), BigInt::from(b.1)),
        );
        prop_assert_eq!(big(&x), bx.clone());
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        if !y.is_zero() {
            prop_assert_eq!(big(&(&x / &y)), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }
}

/// An acyclic quiver on `v0 .. v{n-1}` with arrows `x0, x1, ...`.
fn quiver(arrows: &[(usize, usize)], n: usize) -> Quiver {
    let mut text = String::from("vertices:");
    for v in 0..n {
        text += &format!(" v{v}");
    }
    text += "\n";
    for (i, (s, t)) in arrows.iter().enumerate() {
        text += &format!("arrow: x{i} v{s} v{t}\n");
    }
    parse_presentation(&text).unwrap().quiver
}

/// Random representations of a random acyclic quiver without relations.
fn rep() -> impl Strategy<Value = (Quiver, Representation)> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let arrows = proptest::collection::vec((0..n - 1).prop_flat_map(move |s| (Just(s), s + 1..n)), 1..=4);
            (Just(n), arrows, proptest::collection::vec(0usize..=3, n))
        })
        .prop_flat_map(|(n, arrows, dims)| {
            let mats: Vec<_> = arrows
                .iter()
                .map(|&(s, t)| proptest::collection::vec(-2i64..=2, dims[s] * dims[t]))
                .collect();
            (Just(n), Just(arrows), Just(dims), mats)
        })
        .prop_map(|(n, arrows, dims, entries)| {
            let q = quiver(&arrows, n);
            let maps = arrows
                .iter()
                .zip(&entries)
                .map(|(&(s, t), e)| Matrix::from_ints(dims[t], dims[s], e))
                .collect();
            let m = Representation::new(&q, dims, maps).unwrap();
            (q, m)
        })
}

fn span_rank(fs: &[boundquiver::Morphism]) -> usize {
    let Some(f) = fs.first() else { return 0 };
    let mut e = Echelon::new(len(f));
    for f in fs {
        e.insert(&f.flatten());
    }
    e.rank()
}

fn len(f: &boundquiver::Morphism) -> usize {
    f.blocks.iter().map(|b| b.nrows() * b.ncols()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_solvers_agree((q, m) in rep(), shift in 0usize..3) {
        // A second module: M itself, M ⊕ M, or a simple.
        let n = match shift {
            0 => m.clone(),
            1 => m.direct_sum(&m),
            _ => Representation::simple(&q, q.num_vertices() - 1),
        };
        for (a, b) in [(&m, &n), (&n, &m)] {
            let fast = hom_basis(&q, a, b);
            let dense = hom_basis_dense(&q, a, b);
            prop_assert_eq!(fast.len(), dense.len());
            prop_assert_eq!(span_rank(&fast), fast.len());
            for f in &fast {
                prop_assert!(f.is_homomorphism(&q, a, b));
            }
            let mut both = fast.clone();
            both.extend(dense);
            prop_assert_eq!(span_rank(&both), fast.len());
        }
    }

    #[test]
    fn normalized_basis_gives_an_isomorphic_module((q, m) in rep()) {
        let n = normalize_basis(&q, &m);
        prop_assert_eq!(&n.dims, &m.dims);
        prop_assert!(is_isomorphic(&q, &m, &n));
    }

    /// Over the rationals a split can be out of reach (an endomorphism
    /// ring `Q × Q(√d)`); that must surface as `SplitFailed`.
    #[test]
    fn summands_are_indecomposable_and_add_up((q, m) in rep()) {
        let parts = match decompose(&q, &m) {
            Ok(p) => p,
            Err(e) => {
                prop_assert!(matches!(e, Error::SplitFailed), "{e}");
                return Ok(());
            }
        };
        let mut dims = vec![0usize; q.num_vertices()];
        for p in &parts {
            prop_assert!(end_is_local(&q, p));
            for (d, x) in dims.iter_mut().zip(&p.dims) {
                *d += x;
            }
        }
        prop_assert_eq!(dims, m.dims.clone());
        let sum = parts.iter().skip(1).fold(parts.first().cloned().unwrap_or_else(|| Representation::zero(&q)), |acc, p| acc.direct_sum(p));
        prop_assert!(is_isomorphic(&q, &sum, &m));
    }
}

/// `P` and `P⁻¹` from a sequence of elementary row additions.
fn base_change(d: usize, ops: &[(usize, usize, i64)]) -> (Matrix, Matrix) {
    let mut p = Matrix::identity(d);
    let mut inv = Matrix::identity(d);
    if d < 2 {
        return (p, inv);
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % d, j % d);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(d);
        e.set(j, i, Rational::from_int(c));
        let mut e_inv = Matrix::identity(d);
        e_inv.set(j, i, Rational::from_int(-c));
        p = e.mul(&p);
        inv = inv.mul(&e_inv);
    }
    (p, inv)
}

fn known_modules() -> Vec<(Presentation, Vec<Representation>)> {
    [a_n(4).unwrap(), d_n(5).unwrap(), triangle()]
        .into_iter()
        .map(|p| {
            let fd = FdAlgebra::new(&p).unwrap();
            let mods = enumerate_indecomposables(&fd, 100).unwrap().unwrap();
            (p, mods)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_recovers_hidden_summands(
        which in 0usize..3,
        picks in proptest::collection::vec(0usize..100, 1..=4),
        ops in proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..12),
    ) {
        let known = known_modules();
        let (pres, mods) = &known[which];
        let q = &pres.quiver;
        let chosen: Vec<&Representation> = picks.iter().map(|&i| &mods[i % mods.len()]).collect();
        let sum = chosen.iter().skip(1).fold(chosen[0].clone(), |acc, m| acc.direct_sum(m));
        let changes: Vec<(Matrix, Matrix)> = sum.dims.iter().map(|&d| base_change(d, &ops)).collect();
        let maps = q
            .arrows()
            .iter()
            .zip(&sum.maps)
            .map(|(a, m)| changes[a.target].0.mul(m).mul(&changes[a.source].1))
            .collect();
        let hidden = Representation::new(q, sum.dims.clone(), maps).unwrap();
        prop_assert!(validate_module(pres, &hidden).unwrap());
        let parts = decompose(q, &hidden).unwrap();
        prop_assert_eq!(parts.len(), chosen.len());
        let mut unmatched: Vec<&Representation> = chosen.clone();
        for p in &parts {
            let i = unmatched.iter().position(|m| is_isomorphic(q, m, p));
            prop_assert!(i.is_some(), "summand {:?} not among the hidden ones", p);
            unmatched.remove(i.unwrap());
        }
    }
}

fn small_algebra() -> impl Strategy<Value = Presentation> {
    prop_oneof![
        (1usize..=4).prop_map(|n| a_n(n).unwrap()),
        (2usize..=4).prop_map(|n| a_n_rad2(n).unwrap()),
        (4usize..=5).prop_map(|n| d_n(n).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_dimension_is_multiplicative(a in small_algebra(), b in small_algebra()) {
        let dim = |p: &Presentation| path_basis(p, 32).dimension.unwrap();
        prop_assert_eq!(dim(&tensor(&a, &b)), dim(&a) * dim(&b));
    }

    #[test]
    fn opposite_is_an_involution(a in small_algebra()) {
        let op = a.opposite();
        prop_assert_eq!(&op.opposite(), &a);
        prop_assert_eq!(path_basis(&op, 32).degree_dims(), path_basis(&a, 32).degree_dims());
    }

    #[test]
    fn text_round_trip(a in small_algebra(), b in small_algebra()) {
        let t = tensor(&a, &b);
        prop_assert_eq!(parse_presentation(&t.to_text()).unwrap(), t);
    }
}
