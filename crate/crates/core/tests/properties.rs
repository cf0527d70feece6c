use std::sync::OnceLock;

use proptest::prelude::*;

use num_complex::Complex64 as C64;
use qudit_lgt::circuits::clifford::is_clifford;
use qudit_lgt::circuits::gates::{cz, gate, qft, s_gate, t_gate, GateName};
use qudit_lgt::circuits::injection::{inject_diagonal, inject_qft};
use qudit_lgt::circuits::state::{seeded_rng, DenseState};
use qudit_lgt::dense::{embed, identity, max_abs_diff, unitarity_deviation, DenseOperator};
use qudit_lgt::gauss_code::{build_code, LatticeSpec};
use qudit_lgt::logical::{expand_logical, rewrite_term};
use qudit_lgt::stabilizer::{PauliKind, StabilizerCode};
use qudit_lgt::verify::code_projector;
use qudit_lgt::zn_algebra::{omega, GenPauli};

const TOL: f64 = 1e-12;

fn levels() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

fn pauli_on(n: u32, qudits: usize) -> impl Strategy<Value = GenPauli> {
    let e = 0..n as i64;
    (
        e.clone(),
        prop::collection::vec(e.clone(), qudits),
        prop::collection::vec(e, qudits),
    )
        .prop_map(move |(a, x, z)| GenPauli::new(n, a, &x, &z).unwrap())
}

fn pauli_pair() -> impl Strategy<Value = (GenPauli, GenPauli)> {
    (levels(), 1usize..=3).prop_flat_map(|(n, q)| (pauli_on(n, q), pauli_on(n, q)))
}

/// `ω^a ∏ g_i^{s_i} ∏ X̄_j^{b_j} ∏ Z̄_j^{c_j}` from raw exponents.
fn normalizer_element(code: &StabilizerCode, a: i64, exps: &[i64]) -> GenPauli {
    let mut p = GenPauli::identity(code.levels(), code.n()).unwrap().with_phase(a);
    let ops = code.generators().iter().chain(code.logical_x()).chain(code.logical_z());
    for (op, &e) in ops.zip(exps) {
        p = p.mul(&op.pow(e)).unwrap();
    }
    p
}

fn chain(m: usize, n: u32) -> StabilizerCode {
    build_code(&LatticeSpec::chain(m, n).unwrap()).unwrap().code().clone()
}

/// Orthonormal basis of the two-site chain code space, cached per `N`.
fn code_space(n: u32) -> &'static DenseOperator {
    static CACHE: OnceLock<[DenseOperator; 2]> = OnceLock::new();
    let [three, five] = CACHE.get_or_init(|| [3, 5].map(|n| code_projector(&chain(2, n)).unwrap().range_basis()));
    if n == 3 {
        three
    } else {
        five
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_dense((p, q) in pauli_pair()) {
        let lhs = p.mul(&q).unwrap().to_dense().unwrap();
        let rhs = p.to_dense().unwrap() * q.to_dense().unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < TOL);
    }

    #[test]
    fn commutation_phase_matches_dense((p, q) in pauli_pair()) {
        let k = p.commutation_exponent(&q).unwrap();
        let (dp, dq) = (p.to_dense().unwrap(), q.to_dense().unwrap());
        let lhs = &dp * &dq;
        let rhs = (&dq * &dp) * omega(p.levels(), k as i64);
        prop_assert!(max_abs_diff(&lhs, &rhs) < TOL);
    }

    #[test]
    fn adjoint_and_order((p, _) in pauli_pair()) {
        prop_assert!(p.mul(&p.adjoint()).unwrap().is_identity());
        let full = p.pow(p.levels() as i64);
        prop_assert!(full.x().iter().chain(full.z()).all(|&e| e == 0));
    }

    #[test]
    fn single_qudit_paulis_are_traceless(n in levels(), x in 0i64..7, z in 0i64..7) {
        let p = GenPauli::single(n, 1, 0, x, z).unwrap();
        prop_assume!(!p.is_scalar());
        prop_assert!(p.to_dense().unwrap().trace().norm() < TOL);
    }

    #[test]
    fn normalizer_round_trip(
        n in prop_oneof![Just(3u32), Just(5)],
        a in 0i64..5,
        exps in prop::collection::vec(0i64..5, 12),
    ) {
        let code = chain(4, n);
        let p = normalizer_element(&code, a, &exps);
        prop_assert!(code.syndrome(&p).unwrap().iter().all(|&s| s == 0));
        let d = code.decompose_normalizer(&p).unwrap();
        prop_assert_eq!(code.recompose(&d).unwrap(), p);
    }

    #[test]
    fn rewrite_preserves_code_space_action(
        n in prop_oneof![Just(3u32), Just(5)],
        a in 0i64..5,
        exps in prop::collection::vec(0i64..5, 6),
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
    ) {
        let code = chain(2, n);
        let p = normalizer_element(&code, a, &exps);
        let c = C64::new(re, im);
        let (c2, logical) = rewrite_term(&code, c, &p).unwrap();
        let v = code_space(n);
        let lhs = v.adjoint() * (expand_logical(&code, &logical).unwrap().to_dense().unwrap() * v) * c2;
        let rhs = v.adjoint() * (p.to_dense().unwrap() * v) * c;
        prop_assert!(max_abs_diff(&lhs, &rhs) < TOL);
    }

    #[test]
    fn distance_witnesses_are_genuine(
        n in prop_oneof![Just(3u32), Just(5)],
        kind in prop_oneof![Just(PauliKind::X), Just(PauliKind::Z), Just(PauliKind::Full)],
        w in 1usize..=3,
    ) {
        let code = chain(4, n);
        if let Some(l) = code.find_logical(kind, w, 10_000_000).unwrap() {
            prop_assert!(l.weight() <= w);
            prop_assert!(code.in_normalizer(&l).unwrap());
            prop_assert!(!code.decompose_normalizer(&l).unwrap().is_stabilizer());
            match kind {
                PauliKind::X => prop_assert!(l.z().iter().all(|&e| e == 0)),
                PauliKind::Z => prop_assert!(l.x().iter().all(|&e| e == 0)),
                PauliKind::Full => {}
            }
        }
    }

    #[test]
    fn gates_are_unitary(
        n in prop_oneof![Just(3u32), Just(5), Just(7), Just(11)],
        g in prop_oneof![
            Just(GateName::Qft), Just(GateName::S), Just(GateName::T), Just(GateName::Cz),
            Just(GateName::Sum), Just(GateName::CxTilde), Just(GateName::K),
        ],
    ) {
        prop_assume!(!(g == GateName::T && n < 5));
        prop_assert!(unitarity_deviation(&gate(g, n).unwrap()) < TOL);
    }

    #[test]
    fn clifford_words_stay_clifford(
        n in prop_oneof![Just(3u32), Just(5)],
        qudits in 1usize..=2,
        word in prop::collection::vec((0u8..3, 0usize..2), 0..=6),
    ) {
        let f = qft(n).unwrap();
        let s = s_gate(n).unwrap();
        let dim = (n as usize).pow(qudits as u32);
        let mut u: DenseOperator = identity(dim);
        for (letter, q) in word {
            let q = q % qudits;
            let g = match letter {
                0 => embed(&[(q, &f)], n, qudits).unwrap(),
                1 => embed(&[(q, &s)], n, qudits).unwrap(),
                _ if qudits == 2 => cz(n).unwrap(),
                _ => s.clone(),
            };
            u = g * u;
        }
        prop_assert!(is_clifford(&u, n).unwrap());
    }

    #[test]
    fn injection_is_deterministic(
        seed in any::<u64>(),
        n in prop_oneof![Just(5u32), Just(7)],
        l in 0u32..5,
    ) {
        let psi = DenseState::random(n, 1, &mut seeded_rng(seed)).unwrap();
        let a = inject_qft(&psi, Some(l), &mut seeded_rng(seed)).unwrap();
        let b = inject_qft(&psi, Some(l), &mut seeded_rng(seed ^ 1)).unwrap();
        prop_assert_eq!(&a.output, &b.output);
        let t = t_gate(n).unwrap();
        let a = inject_diagonal(&t, &psi, Some(l), &mut seeded_rng(seed)).unwrap();
        let b = inject_diagonal(&t, &psi, Some(l), &mut seeded_rng(seed)).unwrap();
        prop_assert_eq!(&a.output, &b.output);
        prop_assert_eq!(a.measurement, b.measurement);
    }
}

/// Exhaustive check against every Pauli on the two-site qutrit chain.
#[test]
fn distance_agrees_with_full_enumeration() {
    let code = chain(2, 3);
    let n = code.n();
    let mut best = [usize::MAX; 3];
    for idx in 0..3usize.pow(2 * n as u32) {
        let mut e = Vec::with_capacity(2 * n);
        let mut r = idx;
        for _ in 0..2 * n {
            e.push((r % 3) as i64);
            r /= 3;
        }
        let p = GenPauli::new(3, 0, &e[..n], &e[n..]).unwrap();
        if !code.in_normalizer(&p).unwrap() || code.decompose_normalizer(&p).unwrap().is_stabilizer() {
            continue;
        }
        let w = p.weight();
        best[2] = best[2].min(w);
        if p.z().iter().all(|&v| v == 0) {
            best[0] = best[0].min(w);
        }
        if p.x().iter().all(|&v| v == 0) {
            best[1] = best[1].min(w);
        }
    }
    for (kind, expected) in [
        (PauliKind::X, best[0]),
        (PauliKind::Z, best[1]),
        (PauliKind::Full, best[2]),
    ] {
        assert_eq!(code.distance(kind, n, 10_000_000).unwrap(), Some(expected), "{kind:?}");
    }
}
