use grassmann_fcs::corpus::cases;
use grassmann_fcs::dsl::{parse_document, render_document, BinOp, Document, Expr, Func, KetTerm, StateExpr, Target};
use grassmann_fcs::{BasisKet, GeneratorId, MeasureList, NamedState};
use proptest::prelude::*;

fn number() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (1u32..20).prop_map(|n| Expr::num(f64::from(n))),
        prop::sample::select(vec![0.5, 0.1, 2.25, 1e-7, 2.5e20, 1.0 / 3.0]).prop_map(Expr::num),
        Just(Expr::ImagUnit),
        Just(Expr::Pi),
    ]
}

fn scalar() -> impl Strategy<Value = Expr> {
    number().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::negate),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Add, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Sub, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Mul, a, b)),
            (inner.clone(), number()).prop_map(|(a, b)| Expr::bin(BinOp::Div, a, b)),
            number().prop_map(|a| Expr::call(Func::Sqrt, a)),
            inner.prop_map(|a| Expr::call(Func::Exp, a)),
        ]
    })
}

fn generator(modes: u32) -> impl Strategy<Value = GeneratorId> {
    (1..=modes, any::<bool>()).prop_map(|(m, c)| GeneratorId::new(m, c).unwrap())
}

fn weight(modes: u32) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![scalar(), generator(modes).prop_map(Expr::gen)];
    leaf.prop_recursive(3, 16, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::negate),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Add, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Sub, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Mul, a, b)),
            (inner.clone(), number()).prop_map(|(a, b)| Expr::bin(BinOp::Div, a, b)),
        ]
    })
}

fn state(qubits: usize, modes: u32, depth: u32) -> BoxedStrategy<StateExpr> {
    let ket = (scalar(), generator(modes)).prop_map(|(s, g)| StateExpr::ket(s, g));
    if qubits == 1 && depth == 0 {
        return ket.boxed();
    }
    let mut options: Vec<BoxedStrategy<StateExpr>> = Vec::new();
    if qubits == 1 {
        options.push(ket.boxed());
    } else {
        let split = (1..qubits).prop_flat_map(move |left| {
            (state(left, modes, depth.saturating_sub(1)), state(qubits - left, modes, depth.saturating_sub(1)))
        });
        options.push(split.prop_map(|(a, b)| StateExpr::Tensor(vec![a, b])).boxed());
    }
    if depth > 0 {
        let sub = state(qubits, modes, depth - 1);
        options.push(
            (scalar(), sub.clone())
                .prop_map(|(c, s)| StateExpr::Scaled { coeff: c, state: Box::new(s) })
                .boxed(),
        );
        options.push(
            prop::collection::vec((any::<bool>(), sub), 2..4)
                .prop_map(StateExpr::Sum)
                .boxed(),
        );
    }
    prop::strategy::Union::new(options).boxed()
}

fn target(qubits: usize) -> BoxedStrategy<Target> {
    let kets = prop::collection::vec(
        (any::<bool>(), prop::option::of(scalar()), 0u32..(1 << qubits)),
        1..4,
    )
    .prop_map(move |terms| {
        Target::Kets(
            terms
                .into_iter()
                .map(|(negated, coeff, index)| KetTerm {
                    negated,
                    coeff,
                    ket: BasisKet::new(qubits, index),
                })
                .collect(),
        )
    });
    let named: Vec<Target> = NamedState::all()
        .into_iter()
        .filter(|n| n.qubits() == qubits)
        .map(Target::Named)
        .collect();
    if named.is_empty() {
        kets.boxed()
    } else {
        prop_oneof![kets, prop::sample::select(named)].boxed()
    }
}

fn measure(modes: u32) -> impl Strategy<Value = MeasureList> {
    let all: Vec<GeneratorId> = (1..=modes)
        .flat_map(|m| [GeneratorId::theta_conj(m), GeneratorId::theta(m)])
        .collect();
    Just(all).prop_shuffle().prop_flat_map(|v| {
        let n = v.len();
        (Just(v), 1..=n)
    })
    .prop_map(|(v, n)| MeasureList::new(v[..n].to_vec()).unwrap())
}

fn document() -> impl Strategy<Value = Document> {
    (1u32..=3, 1usize..=3).prop_flat_map(|(modes, qubits)| {
        (
            prop::option::of(state(qubits, modes, 2)),
            prop::option::of(weight(modes)),
            prop::option::of(measure(modes)),
            prop::option::of(target(qubits)),
        )
            .prop_map(move |(state, weight, measure, target)| Document {
                modes,
                state,
                weight,
                measure,
                target,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(doc in document()) {
        let text = render_document(&doc);
        let back = parse_document(&text).map_err(|e| TestCaseError::fail(format!("{text}\n{e}")))?;
        prop_assert_eq!(&back, &doc, "{}", text);
        prop_assert_eq!(render_document(&back), text);
    }
}

#[test]
fn corpus_documents_round_trip() {
    for case in cases() {
        let once = render_document(&case.document);
        let reparsed = parse_document(&once).unwrap();
        assert_eq!(reparsed, case.document, "{}", case.name);
        assert_eq!(render_document(&reparsed), once, "{}", case.name);
    }
}

#[test]
fn rendering_is_deterministic() {
    let a: Vec<String> = cases().iter().map(|c| render_document(&c.document)).collect();
    let b: Vec<String> = cases().iter().map(|c| render_document(&c.document)).collect();
    assert_eq!(a, b);
}
