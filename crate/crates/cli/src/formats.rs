//! Edge-list, graph6 and DOT encodings of [`Graph`].

use std::fmt::Write as _;

use bicay_core::graph::Graph;
use petgraph::dot::{Config, Dot};
use petgraph::graph::UnGraph;
use petgraph::graph6::{from_graph6_representation, ToGraph6};

/// Largest order with a graph6 encoding (`~` plus 18 bits).
pub const GRAPH6_MAX_ORDER: usize = 258_047;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
    Dot,
}

impl Format {
    /// `.g6` files are graph6, anything else is an edge list.
    pub fn from_path(path: &str) -> Format {
        if path.ends_with(".g6") || path.ends_with(".graph6") {
            Format::Graph6
        } else {
            Format::Edgelist
        }
    }
}

/// One `u v` line per edge with `u < v`, sorted.
pub fn write_edgelist(graph: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

/// Reads `u v` lines; blank lines and `#` comments are skipped. The vertex
/// count is one more than the largest index.
pub fn read_edgelist(text: &str) -> Result<Graph, String> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| s.parse::<usize>().map_err(|_| format!("line {}: {s:?} is not a vertex", idx + 1));
        let [u, v] = fields[..] else {
            return Err(format!("line {}: expected two vertices", idx + 1));
        };
        let (u, v) = (parse(u)?, parse(v)?);
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).map_err(|e| e.to_string())
}

fn to_petgraph(graph: &Graph) -> UnGraph<usize, ()> {
    let mut g = UnGraph::with_capacity(graph.vertex_count(), graph.edge_count());
    for v in 0..graph.vertex_count() {
        g.add_node(v);
    }
    g.extend_with_edges(graph.edges().into_iter().map(|(u, v)| (u as u32, v as u32)));
    g
}

pub fn write_graph6(graph: &Graph) -> Result<String, String> {
    if graph.vertex_count() > GRAPH6_MAX_ORDER {
        return Err(format!("graph6 supports at most {GRAPH6_MAX_ORDER} vertices"));
    }
    Ok(to_petgraph(graph).graph6_string())
}

/// Decodes one graph6 line, checking the header and length first.
pub fn read_graph6(text: &str) -> Result<Graph, String> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err("empty graph6 input".into());
    }
    if let Some(&c) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(format!("byte {c} is outside the graph6 range"));
    }
    let value = |b: u8| (b - 63) as usize;
    let (n, header) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err("graph6 orders above 258047 are not supported".into());
        }
        ((value(bytes[1]) << 12) | (value(bytes[2]) << 6) | value(bytes[3]), 4)
    } else {
        (value(bytes[0]), 1)
    };
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() - header != expected {
        return Err(format!("graph6 body has {} bytes, expected {expected} for {n} vertices", bytes.len() - header));
    }
    let (order, edges) = from_graph6_representation::<u32>(line.to_string());
    Graph::from_edges(order, edges.into_iter().map(|(u, v)| (u as usize, v as usize))).map_err(|e| e.to_string())
}

/// Undirected DOT with the given vertex labels.
pub fn write_dot(graph: &Graph, labels: &[String]) -> String {
    let mut g: UnGraph<&str, &str> = UnGraph::with_capacity(graph.vertex_count(), graph.edge_count());
    for label in labels {
        g.add_node(label.as_str());
    }
    g.extend_with_edges(graph.edges().into_iter().map(|(u, v)| (u as u32, v as u32, "")));
    format!("{}", Dot::with_config(&g, &[Config::EdgeNoLabel]))
}

pub fn read(text: &str, format: Format) -> Result<Graph, String> {
    match format {
        Format::Edgelist => read_edgelist(text),
        Format::Graph6 => read_graph6(text),
        Format::Dot => Err("DOT input is not supported".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graph6_known_vector() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g).unwrap(), "DQc");
        assert_eq!(read_graph6("DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_long_header() {
        let g = Graph::cycle(100);
        let s = write_graph6(&g).unwrap();
        assert!(s.starts_with("~?@c"), "{s}");
        assert_eq!(read_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("D Q").is_err());
        assert!(read_graph6("DQ").is_err());
        assert!(read_graph6("DQcc").is_err());
        assert!(read_graph6("~~").is_err());
    }

    #[test]
    fn edgelist_round_trip() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 2)]).unwrap();
        let text = write_edgelist(&g);
        assert_eq!(text, "0 1\n1 2\n2 3\n");
        assert_eq!(read_edgelist(&text).unwrap(), g);
        assert_eq!(read_edgelist("# comment\n\n0 1 # trailing\n").unwrap().edge_count(), 1);
        assert!(read_edgelist("0 x\n").is_err());
        assert!(read_edgelist("0 1 2\n").is_err());
        assert!(read_edgelist("1 1\n").is_err());
    }

    #[test]
    fn dot_output() {
        let g = Graph::path(2);
        let dot = write_dot(&g, &["x".into(), "y".into()]);
        assert!(dot.starts_with("graph {"), "{dot}");
        assert!(dot.contains("0 -- 1"), "{dot}");
        assert!(dot.contains("label = \"x\""), "{dot}");
    }

    proptest! {
        #[test]
        fn round_trips(n in 1usize..120, edges in proptest::collection::vec((0usize..120, 0usize..120), 0..300)) {
            let edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let g6 = write_graph6(&g).unwrap();
            let back = read_graph6(&g6).unwrap();
            prop_assert_eq!(write_graph6(&back).unwrap(), g6);
            prop_assert_eq!(&back, &g);
            let text = write_edgelist(&g);
            prop_assert_eq!(read_edgelist(&text).unwrap().edges(), g.edges());
        }
    }
}
