use torvanish_cli::{parse_input, print_statements, Statement};

const CORPUS: &[&str] = &[
    "ring F32003[x,y]/(x*y)",
    "ring S = F32003[x,y,z]",
    "ring R = F101[a,b,c,d]/(a*d - b*c)",
    "ring Q = F32003[x,y,z]/(x^2 + y^2 + z^2) domain",
    "ring C = F32003[x,y,z]/(x^2, y^2)",
    "ring T = F7[t]",
    "ring U = F2[u,v]/(u^2 + v^2)",
    "ring W = F32003[x1,x2,x3,x4]/(x1*x2 - x3*x4, x1^2)",
    "ring R = F32003[x,y]\nideal (x^2, x*y)",
    "ring R = F32003[x,y]\nideal I = (x^3 - 2*x*y^2, y^3)",
    "ring R = F32003[x,y,z]\nideal J = ((x + y)^2, -z^2)",
    "ring R = F32003[x,y,z]\nideal J = (x y, 3x z, 0)",
    "ring R = F32003[x,y,z]\nideal Z = ()",
    "ring A = F32003[x,y]\nring B = F32003[u,v]\nideal K over A = (x*y)",
    "ring R = F32003[x,y]/(x*y)\nmodule over R gens [0] rels [[x]]",
    "ring R = F32003[x,y]/(x*y)\nmodule M = R/(x)",
    "ring R = F32003[x,y]/(x*y)\nmodule N R/(x, y)",
    "ring R = F32003[x,y]/(x*y)\nmodule F = R^3",
    "ring R = F32003[x,y]/(x*y)\nmodule K = k",
    "ring R = F32003[x,y,z]\nmodule Mx = m",
    "ring R = F32003[x,y,z]\nmodule P gens [0, 1] rels [[y, 0], [x^2, x], [0, z]]",
    "ring R = F32003[x,y,z]\nmodule P gens [0, 0] rels [[x, -y], [y, -z]]",
    "ring R = F32003[x,y,z]\nmodule P gens [-1, 2] rels []",
    "ring R = F32003[x,y,z]\nmodule Z gens [] rels []",
    "ring R = F32003[x,y,z]\nmodule P = gens [1] rels [[x^2 - y*z], [z^3]]",
    "ring R = F32003[x,y]\nmodule A = R/(x^2)\nmodule B = A",
    "# comment line\nring R = F32003[x,y] # trailing comment\n\nmodule M = R/(y)",
    "ring R = F32003[x,y]/(x^2)\nideal I = (x, y^2)\nmodule M over R = R/(x*y)",
    "ring S = F32003[x,y,z,w]/(x*w - y*z, x^2 - y*w)\nmodule M = S/(x, y)",
    "ring R = F32003[x,y,z]\nmodule M gens [0] rels [[(x + y + z)^3]]",
];

fn reparse(sts: &[Statement]) -> Vec<Statement> {
    parse_input(&print_statements(sts)).unwrap().1
}

#[test]
fn corpus_has_thirty_cases() {
    assert_eq!(CORPUS.len(), 30);
}

#[test]
fn print_then_parse_is_identity() {
    for (k, text) in CORPUS.iter().enumerate() {
        let (_, a) = parse_input(text).unwrap_or_else(|e| panic!("case {k}: {e}"));
        assert!(!a.is_empty(), "case {k}");
        let b = reparse(&a);
        assert_eq!(a.len(), b.len(), "case {k}");
        for (s, t) in a.iter().zip(&b) {
            assert!(s.same_as(t), "case {k}: {s} reparsed as {t}");
        }
        assert_eq!(print_statements(&a), print_statements(&b), "case {k}");
    }
}

#[test]
fn malformed_inputs_report_positions() {
    let cases: &[(&str, usize, usize)] = &[
        ("ring F32003[x,y", 1, 16),
        ("ring F32003[x,x]", 1, 12),
        ("ring G5[x]", 1, 6),
        ("ring F32003[x,y]\nideal (x, y", 2, 12),
        ("ring F32003[x,y]\nideal (x, q)", 2, 11),
        ("ring F32003[x,y]\nmodule gens [0] rels [[x], [y]", 2, 31),
        ("ring F32003[x,y]\nmodule gens [a] rels []", 2, 14),
        ("ring F32003[x,y]\n\nfrobnicate", 3, 1),
        ("ring F32003[x,y]\nmodule M = Q/(x)", 2, 12),
    ];
    for &(text, line, column) in cases {
        let e = parse_input(text).unwrap_err();
        assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
    }
}
