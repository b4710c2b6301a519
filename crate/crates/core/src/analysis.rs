//! Whole-state-space views of a network: the asynchronous state diagram,
//! fixed points and reachability.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::state::State;

/// Largest width for which the diagram (all `2^n × 2^n` state/mask pairs)
/// is enumerated.
pub const MAX_DIAGRAM_WIDTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub target: State,
    /// Every `λ` with `Φ^λ(source) = target`, in index order.
    pub masks: Vec<State>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub state: State,
    /// Coordinates `i` with `Φ_i(μ) ≠ μ_i`.
    pub changed: Vec<usize>,
    /// Outgoing edges ordered by target index.
    pub edges: Vec<Edge>,
}

/// All one-step transitions `μ → Φ^λ(μ)`, one edge per target with the
/// masks that lead there merged onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDiagram {
    width: usize,
    nodes: Vec<Node>,
}

fn check_capacity(width: usize) -> Result<()> {
    if width > MAX_DIAGRAM_WIDTH {
        Err(Error::Capacity {
            width,
            limit: MAX_DIAGRAM_WIDTH,
        })
    } else {
        Ok(())
    }
}

pub fn build_diagram(net: &Network) -> Result<StateDiagram> {
    let width = net.width();
    check_capacity(width)?;
    let masks: Vec<State> = State::all(width)?.collect();
    let nodes = State::all(width)?
        .map(|mu| {
            let mut by_target: BTreeMap<State, Vec<State>> = BTreeMap::new();
            for lambda in &masks {
                by_target.entry(net.step(lambda, &mu)).or_default().push(*lambda);
            }
            Node {
                state: mu,
                changed: net.changed_coords(&mu).expect("same width"),
                edges: by_target
                    .into_iter()
                    .map(|(target, masks)| Edge { target, masks })
                    .collect(),
            }
        })
        .collect();
    Ok(StateDiagram { width, nodes })
}

impl StateDiagram {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, mu: &State) -> Result<&Node> {
        Error::check_width(self.width, mu.width())?;
        Ok(&self.nodes[mu.index()])
    }

    pub fn edges_from(&self, mu: &State) -> Result<&[Edge]> {
        Ok(&self.node(mu)?.edges)
    }

    /// The masks on the edge `from → to`; empty when there is no such edge.
    pub fn masks_between(&self, from: &State, to: &State) -> Result<&[State]> {
        Ok(self
            .edges_from(from)?
            .iter()
            .find(|e| e.target == *to)
            .map(|e| e.masks.as_slice())
            .unwrap_or(&[]))
    }

    /// JSON dump of nodes, edges and changed coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct EdgeOut<'a> {
            from: State,
            to: State,
            masks: &'a [State],
        }
        #[derive(Serialize)]
        struct Dump<'a> {
            width: usize,
            nodes: Vec<State>,
            edges: Vec<EdgeOut<'a>>,
            changed_coords: BTreeMap<String, &'a [usize]>,
        }
        let dump = Dump {
            width: self.width,
            nodes: self.nodes.iter().map(|n| n.state).collect(),
            edges: self
                .nodes
                .iter()
                .flat_map(|n| {
                    n.edges.iter().map(move |e| EdgeOut {
                        from: n.state,
                        to: e.target,
                        masks: &e.masks,
                    })
                })
                .collect(),
            changed_coords: self
                .nodes
                .iter()
                .map(|n| (n.state.to_string(), n.changed.as_slice()))
                .collect(),
        };
        serde_json::to_value(dump).expect("plain data")
    }
}

/// DOT rendering of the diagram. Node labels carry a `[Δi,j]` suffix listing
/// the coordinates that `Φ` would change there. With `hide_self_loops`,
/// edges `μ → μ` are left out.
pub fn export_dot(diagram: &StateDiagram, hide_self_loops: bool) -> String {
    let mut out = String::new();
    out.push_str("digraph state_diagram {\n");
    out.push_str("  node [shape=box];\n");
    for node in &diagram.nodes {
        let label = if node.changed.is_empty() {
            node.state.to_string()
        } else {
            let coords: Vec<String> = node.changed.iter().map(|i| i.to_string()).collect();
            format!("{} [Δ{}]", node.state, coords.join(","))
        };
        writeln!(out, "  \"{}\" [label=\"{}\"];", node.state, label).unwrap();
    }
    for node in &diagram.nodes {
        for edge in &node.edges {
            if hide_self_loops && edge.target == node.state {
                continue;
            }
            let masks: Vec<String> = edge.masks.iter().map(|m| m.to_string()).collect();
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                node.state,
                edge.target,
                masks.join(",")
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn fixed_points(net: &Network) -> BTreeSet<State> {
    State::all(net.width())
        .expect("network width is valid")
        .filter(|mu| net.image(mu) == *mu)
        .collect()
}

/// Least set containing `μ` and closed under every `ν ↦ Φ^λ(ν)`.
pub fn reachable(net: &Network, mu: &State) -> Result<BTreeSet<State>> {
    Error::check_width(net.width(), mu.width())?;
    check_capacity(net.width())?;
    let mut seen = BTreeSet::from([*mu]);
    let mut queue = VecDeque::from([*mu]);
    while let Some(state) = queue.pop_front() {
        let diff = net.image(&state).bits() ^ state.bits();
        // every nonempty subset of the changing coordinates
        let mut sub = diff;
        while sub != 0 {
            let next = State::from_index(net.width(), state.bits() ^ sub);
            if seen.insert(next) {
                queue.push_back(next);
            }
            sub = (sub - 1) & diff;
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> State {
        text.parse().unwrap()
    }

    #[test]
    fn example_transfers_from_origin() {
        let d = build_diagram(&Network::example()).unwrap();
        let origin = s("00");
        for target in ["00", "10", "01", "11"] {
            assert_eq!(d.masks_between(&origin, &s(target)).unwrap(), &[s(target)]);
        }
        assert_eq!(d.node(&origin).unwrap().changed, vec![1, 2]);
    }

    #[test]
    fn identity_has_only_self_loops() {
        let d = build_diagram(&Network::identity(1).unwrap()).unwrap();
        for node in d.nodes() {
            assert_eq!(node.edges.len(), 1);
            assert_eq!(node.edges[0].target, node.state);
            assert_eq!(node.edges[0].masks, vec![s("0"), s("1")]);
        }
    }

    #[test]
    fn example_fixed_points_and_reachability() {
        let net = Network::example();
        assert_eq!(fixed_points(&net), BTreeSet::from([s("01")]));
        let all: BTreeSet<State> = State::all(2).unwrap().collect();
        assert_eq!(reachable(&net, &s("00")).unwrap(), all);
        assert_eq!(reachable(&net, &s("01")).unwrap(), BTreeSet::from([s("01")]));
        assert_eq!(reachable(&net, &s("10")).unwrap(), BTreeSet::from([s("10"), s("11")]));
    }

    #[test]
    fn fixed_points_of_simple_networks() {
        let id = Network::identity(3).unwrap();
        assert_eq!(fixed_points(&id).len(), 8);
        let c = Network::constant(s("101")).unwrap();
        assert_eq!(fixed_points(&c), BTreeSet::from([s("101")]));
        assert_eq!(reachable(&id, &s("011")).unwrap(), BTreeSet::from([s("011")]));
    }

    #[test]
    fn dot_output() {
        let d = build_diagram(&Network::example()).unwrap();
        let dot = export_dot(&d, false);
        assert!(dot.contains("\"00\" -> \"11\" [label=\"11\"];"));
        assert!(dot.contains("\"00\" [label=\"00 [Δ1,2]\"];"));
        assert!(dot.contains("\"01\" [label=\"01\"];"));
        assert!(dot.contains("\"01\" -> \"01\" [label=\"00,10,01,11\"];"));
        assert_eq!(dot, export_dot(&build_diagram(&Network::example()).unwrap(), false));
        let hidden = export_dot(&d, true);
        assert!(!hidden.contains("\"01\" -> \"01\""));
        assert!(hidden.contains("\"00\" -> \"11\""));

        let id = export_dot(&build_diagram(&Network::identity(2).unwrap()).unwrap(), true);
        assert!(!id.contains("->"));
    }

    #[test]
    fn json_dump() {
        let d = build_diagram(&Network::example()).unwrap();
        let json = d.to_json();
        assert_eq!(json["width"], 2);
        assert_eq!(json["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(json["changed_coords"]["00"], serde_json::json!([1, 2]));
        let edges = json["edges"].as_array().unwrap();
        assert!(edges.contains(&serde_json::json!({"from": "00", "to": "11", "masks": ["11"]})));
    }

    #[test]
    fn capacity_limit() {
        let wide = Network::identity(17).unwrap();
        assert!(matches!(build_diagram(&wide), Err(Error::Capacity { .. })));
        assert!(matches!(
            reachable(&wide, &State::zeros(17).unwrap()),
            Err(Error::Capacity { .. })
        ));
    }
}
