//! GraphML and DOT exports checked with a small structural XML reader.

use std::collections::BTreeSet;

use sbs_core::network::{CooccurrenceNetwork, NetworkParams};

#[derive(Debug)]
struct Element {
    name: String,
    attrs: Vec<(String, String)>,
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::new();
    let mut rest = s;
    while let Some(i) = rest.find('&') {
        out.push_str(&rest[..i]);
        let end = rest[i..].find(';').ok_or("unterminated entity")? + i;
        out.push(match &rest[i + 1..end] {
            "amp" => '&',
            "lt" => '<',
            "gt" => '>',
            "quot" => '"',
            "apos" => '\'',
            other => return Err(format!("unknown entity &{other};")),
        });
        rest = &rest[end + 1..];
    }
    if rest.contains('<') {
        return Err("raw < in text".into());
    }
    out.push_str(rest);
    Ok(out)
}

fn parse_attrs(s: &str) -> Result<Vec<(String, String)>, String> {
    let mut attrs = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| format!("attribute without value in `{s}`"))?;
        let name = rest[..eq].trim().to_string();
        let after = &rest[eq + 1..];
        if !after.starts_with('"') {
            return Err(format!("unquoted attribute `{name}`"));
        }
        let close = after[1..].find('"').ok_or("unterminated attribute")? + 1;
        attrs.push((name, unescape(&after[1..close])?));
        rest = after[close + 1..].trim_start();
    }
    Ok(attrs)
}

/// Returns every element in document order, with the text of `<data>` nodes
/// appended as a `#text` attribute, after checking tag balance.
fn read_xml(doc: &str) -> Result<Vec<Element>, String> {
    let body = doc
        .strip_prefix("<?xml version=\"1.0\" encoding=\"UTF-8\"?>")
        .ok_or("missing XML declaration")?;
    let mut stack: Vec<usize> = Vec::new();
    let mut elements: Vec<Element> = Vec::new();
    let mut rest = body;
    while let Some(open) = rest.find('<') {
        let text = unescape(&rest[..open])?;
        if let Some(&top) = stack.last() {
            if !text.trim().is_empty() {
                elements[top].attrs.push(("#text".into(), text));
            }
        } else if !text.trim().is_empty() {
            return Err("text outside the root element".into());
        }
        let close = rest[open..].find('>').ok_or("unterminated tag")? + open;
        let tag = &rest[open + 1..close];
        if let Some(name) = tag.strip_prefix('/') {
            let top = stack.pop().ok_or("unbalanced close tag")?;
            if elements[top].name != name {
                return Err(format!("</{name}> closes <{}>", elements[top].name));
            }
        } else {
            let self_closing = tag.ends_with('/');
            let tag = tag.trim_end_matches('/');
            let (name, attrs) = tag.split_once(' ').unwrap_or((tag, ""));
            if elements.is_empty() && name != "graphml" {
                return Err("root is not <graphml>".into());
            }
            if !elements.is_empty() && stack.is_empty() {
                return Err("second root element".into());
            }
            elements.push(Element {
                name: name.to_string(),
                attrs: parse_attrs(attrs)?,
            });
            if !self_closing {
                stack.push(elements.len() - 1);
            }
        }
        rest = &rest[close + 1..];
    }
    if !stack.is_empty() || !rest.trim().is_empty() {
        return Err("unclosed elements at end of document".into());
    }
    Ok(elements)
}

fn attr<'a>(e: &'a Element, name: &str) -> &'a str {
    e.attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str()).unwrap_or("")
}

fn tricky() -> CooccurrenceNetwork {
    CooccurrenceNetwork::from_parts(
        NetworkParams::new(5, 2).unwrap(),
        [("a&b", 3), ("<c>", 2), ("d\"e'", 4), ("città", 1)],
        [("a&b", "<c>", 2), ("<c>", "d\"e'", 5), ("a&b", "città", 2)],
    )
    .unwrap()
}

#[test]
fn graphml_is_well_formed_and_complete() {
    let net = tricky();
    let xml = net.to_graphml();
    let elements = read_xml(&xml).unwrap();

    let keys: BTreeSet<&str> = elements.iter().filter(|e| e.name == "key").map(|e| attr(e, "id")).collect();
    assert_eq!(keys, ["frequency", "min_weight", "term", "weight", "window"].into_iter().collect());

    let graph = elements.iter().find(|e| e.name == "graph").unwrap();
    assert_eq!(attr(graph, "edgedefault"), "undirected");

    let nodes: Vec<&Element> = elements.iter().filter(|e| e.name == "node").collect();
    let edges: Vec<&Element> = elements.iter().filter(|e| e.name == "edge").collect();
    assert_eq!(nodes.len(), net.node_count());
    assert_eq!(edges.len(), net.edge_count());

    let ids: BTreeSet<&str> = nodes.iter().map(|n| attr(n, "id")).collect();
    for e in &edges {
        assert!(ids.contains(attr(e, "source")) && ids.contains(attr(e, "target")));
    }

    let terms: BTreeSet<String> = elements
        .iter()
        .filter(|e| e.name == "data" && attr(e, "key") == "term")
        .map(|e| attr(e, "#text").to_string())
        .collect();
    let expected: BTreeSet<String> = net.terms().iter().cloned().collect();
    assert_eq!(terms, expected);

    let weights: u64 = elements
        .iter()
        .filter(|e| e.name == "data" && attr(e, "key") == "weight")
        .map(|e| attr(e, "#text").parse::<u64>().unwrap())
        .sum();
    assert_eq!(weights, net.total_weight());
}

#[test]
fn reader_rejects_malformed_documents() {
    let decl = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>";
    for bad in [
        "<graphml><node></graphml>",
        "<graphml><node id=n0/></graphml>",
        "<graphml>a & b</graphml>",
        "<graphml></graphml><graphml></graphml>",
    ] {
        assert!(read_xml(&format!("{decl}{bad}")).is_err(), "{bad}");
    }
}

#[test]
fn dot_lists_every_node_and_edge() {
    let net = tricky();
    let dot = net.to_dot();
    assert!(dot.starts_with("graph cooccurrence {\n"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches(" -- ").count(), net.edge_count());
    assert!(dot.contains("\"d\\\"e'\" [frequency=4];"));
    assert!(dot.contains("\"<c>\" -- \"d\\\"e'\" [weight=5];"));
}
