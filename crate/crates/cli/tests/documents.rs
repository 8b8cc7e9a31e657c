use std::path::PathBuf;

use kgraph::catalog;
use kgraph_cli::{emit_cocycle, emit_graph, parse_cocycle, parse_graph, CliError, GraphDocument};

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

/// The graph documents under `catalog/` are the core catalog, emitted canonically.
#[test]
fn catalog_documents_match_the_library() {
    for (name, graph) in catalog::all() {
        let text = emit_graph(&GraphDocument { graph: graph.clone(), blocks: None });
        let path = catalog_dir().join(format!("{name}.kg"));
        if updating() {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name}: rerun with UPDATE_GOLDEN=1");
        assert_eq!(*parse_graph(&on_disk).unwrap().graph, *graph, "{name}");
    }
}

const MINIMAL_B2: &str = r#"{"k": 1, "vertices": ["v"], "squares": [],
  "edges": [{"id": "f1", "colour": 1, "source": "v", "range": "v"},
            {"id": "f2", "colour": 1, "source": "v", "range": "v"}]}"#;

#[test]
fn minimal_b2() {
    let doc = parse_graph(MINIMAL_B2).unwrap();
    assert_eq!(doc.graph.vertex_count(), 1);
    assert_eq!(doc.graph.edge_count(), 2);
    assert!(doc.blocks.is_none());
}

#[test]
fn colour_out_of_range_is_a_parse_error() {
    let text = "{\n  \"k\": 2,\n  \"vertices\": [\"v\"],\n  \"squares\": [],\n  \"edges\": [\n    {\"id\": \"e\", \"colour\": 3, \"source\": \"v\", \"range\": \"v\"}\n  ]\n}\n";
    match parse_graph(text) {
        Err(CliError::Parse { line, reason }) => {
            assert_eq!(line, Some(6));
            assert!(reason.contains("colour 3"), "{reason}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let syntax = parse_graph("{\"k\": 1,\n \"vertices\": [}");
    assert!(matches!(syntax, Err(CliError::Parse { line: Some(2), .. })), "{syntax:?}");
    let spaced = MINIMAL_B2.replace("\"f2\"", "\"f 2\"");
    assert!(matches!(parse_graph(&spaced), Err(CliError::Parse { .. })));
    let extra = MINIMAL_B2.replace("\"k\": 1", "\"k\": 1, \"rank\": 1");
    assert!(matches!(parse_graph(&extra), Err(CliError::Parse { .. })));
    // a rank-2 loop pair without its square
    let incomplete = r#"{"k": 2, "vertices": ["v"], "squares": [],
      "edges": [{"id": "e", "colour": 1, "source": "v", "range": "v"},
                {"id": "f", "colour": 2, "source": "v", "range": "v"}]}"#;
    assert!(matches!(parse_graph(incomplete), Err(CliError::Validation(_))));
}

#[test]
fn emit_then_parse_reproduces_the_bytes() {
    for (name, graph) in catalog::all() {
        let text = emit_graph(&GraphDocument { graph, blocks: None });
        assert_eq!(emit_graph(&parse_graph(&text).unwrap()), text, "{name}");
    }
    let t2 = catalog::t2();
    let blocks = t2.canonical_blocks().unwrap();
    let text = emit_graph(&GraphDocument { graph: t2, blocks: Some(blocks.clone()) });
    let doc = parse_graph(&text).unwrap();
    assert_eq!(doc.blocks, Some(blocks));
    assert_eq!(emit_graph(&doc), text);
}

#[test]
fn cocycle_documents() {
    let t2 = catalog::t2();
    let theta = parse_cocycle(r#"{"coeff": "Q/Z", "kind": "cubical2", "values": {"e f": "2/8"}}"#, &t2).unwrap();
    let text = emit_cocycle(&theta);
    assert!(text.contains("\"1/4\""), "{text}");
    assert_eq!(emit_cocycle(&parse_cocycle(&text, &t2).unwrap()), text);

    let edges = parse_cocycle(r#"{"coeff": "Z/4", "kind": "cat-coboundary", "values": {"e": 3, "f": -1}}"#, &t2).unwrap();
    let text = emit_cocycle(&edges);
    assert!(text.contains("\"f\": 3"), "{text}");
    assert_eq!(emit_cocycle(&parse_cocycle(&text, &t2).unwrap()), text);

    for bad in [
        r#"{"coeff": "Q/Z", "kind": "cubical2", "values": {}}"#,
        r#"{"coeff": "Q/Z", "kind": "cubical2", "values": {"e f": "1/4", "f e": 0}}"#,
        r#"{"coeff": "Z/2", "kind": "cubical2", "values": {"e f": "1/2"}}"#,
        r#"{"coeff": "Z", "kind": "functor2", "values": {"e": 1, "f": 1}}"#,
        r#"{"coeff": "Z/0", "kind": "functor1", "values": {"e": 1, "f": 1}}"#,
    ] {
        assert!(matches!(parse_cocycle(bad, &t2), Err(CliError::Parse { .. })), "{bad}");
    }
}
