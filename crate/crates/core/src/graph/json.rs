use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Wire form `{"n": int, "edges": [[u,v],...], "labels": [text,...]?}` with
/// edges `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::new(j.n, &edges)?;
        match j.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let j: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::try_from(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_sorted_and_labels_optional() {
        let g = Graph::new(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back = Graph::from_json(r#"{"n":3,"edges":[[1,2],[0,1]],"labels":["a","b","c"]}"#).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.label(2), Some("c"));
    }

    #[test]
    fn invalid_json_rejected() {
        assert!(matches!(Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#), Err(GraphError::SelfLoop(0))));
        assert!(matches!(Graph::from_json("nope"), Err(GraphError::Json(_))));
        assert!(matches!(
            Graph::from_json(r#"{"n":2,"edges":[],"labels":["x"]}"#),
            Err(GraphError::LabelCount { .. })
        ));
    }
}
