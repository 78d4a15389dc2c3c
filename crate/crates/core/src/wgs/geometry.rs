use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register the engine will build.
pub const MAX_QUBITS: usize = 12;

/// How pairwise distances `d(k, l)` are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    /// `|k − l|` on the qubit labels.
    LabelChain,
    /// Shortest-path length on the nearest-neighbour edge set.
    Graph,
    /// Euclidean distance between planar coordinates.
    Euclidean,
}

impl DistanceMode {
    pub const ALL: [DistanceMode; 3] = [Self::LabelChain, Self::Graph, Self::Euclidean];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LabelChain => "label-chain",
            Self::Graph => "graph",
            Self::Euclidean => "euclidean",
        }
    }
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "label-chain" | "chain" => Ok(Self::LabelChain),
            "graph" => Ok(Self::Graph),
            "euclidean" => Ok(Self::Euclidean),
            other => Err(Error::InvalidConfig(format!("unknown distance mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Five-qubit chain: input 1, body 2–4, output 5.
    SingleGateChain5,
    /// Four-qubit T: inputs {1, 4}, body {2}, outputs {3, 4}.
    CnotT4,
}

/// Qubit register with its role partition and distances.
///
/// Labels are 1-based in the public API (matching the usual figure
/// numbering); internally qubit `k` lives at index `k − 1` and is the
/// `k`-th most significant bit of a register index.
#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    n: usize,
    inputs: Vec<usize>,
    body: Vec<usize>,
    outputs: Vec<usize>,
    distance_mode: DistanceMode,
    coordinates: Option<Vec<(f64, f64)>>,
    nn_edges: Vec<(usize, usize)>,
    distances: Vec<Vec<f64>>,
}

impl Geometry {
    /// Builds and validates a custom geometry. Labels are 1-based.
    pub fn new(
        n: usize,
        inputs: &[usize],
        body: &[usize],
        outputs: &[usize],
        nn_edges: &[(usize, usize)],
        distance_mode: DistanceMode,
        coordinates: Option<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidGeometry(format!(
                "qubit count {n} outside 1..={MAX_QUBITS}"
            )));
        }
        let norm = |xs: &[usize], what: &str| -> Result<Vec<usize>> {
            let set: BTreeSet<usize> = xs.iter().copied().collect();
            if set.len() != xs.len() {
                return Err(Error::InvalidGeometry(format!("duplicate label in {what}")));
            }
            if let Some(&bad) = set.iter().find(|&&k| k == 0 || k > n) {
                return Err(Error::InvalidGeometry(format!("label {bad} in {what} out of range")));
            }
            Ok(set.into_iter().collect())
        };
        let inputs = norm(inputs, "V_I")?;
        let body = norm(body, "V_M")?;
        let outputs = norm(outputs, "V_O")?;
        if body.iter().any(|k| inputs.contains(k)) {
            return Err(Error::InvalidGeometry("V_M overlaps V_I".into()));
        }
        if body.iter().any(|k| outputs.contains(k)) {
            return Err(Error::InvalidGeometry("V_M overlaps V_O".into()));
        }
        let covered: BTreeSet<usize> = inputs.iter().chain(&body).chain(&outputs).copied().collect();
        if covered.len() != n {
            return Err(Error::InvalidGeometry("V_I ∪ V_M ∪ V_O does not cover all qubits".into()));
        }
        if inputs.is_empty() || outputs.is_empty() {
            return Err(Error::InvalidGeometry("empty input or output set".into()));
        }
        let mut edges = Vec::with_capacity(nn_edges.len());
        for &(a, b) in nn_edges {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::InvalidGeometry(format!("bad edge ({a}, {b})")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();

        let distances = match distance_mode {
            DistanceMode::LabelChain => (0..n)
                .map(|k| (0..n).map(|l| k.abs_diff(l) as f64).collect())
                .collect(),
            DistanceMode::Graph => graph_distances(n, &edges)?,
            DistanceMode::Euclidean => {
                let pts = coordinates.as_ref().ok_or_else(|| {
                    Error::InvalidGeometry("euclidean mode needs coordinates".into())
                })?;
                if pts.len() != n {
                    return Err(Error::InvalidGeometry("coordinate count differs from N".into()));
                }
                (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|l| {
                                let (dx, dy) = (pts[k].0 - pts[l].0, pts[k].1 - pts[l].1);
                                dx.hypot(dy)
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        for k in 0..n {
            for l in 0..n {
                if k != l && !(distances[k][l] > 0.0) {
                    return Err(Error::NonPositiveDistance(k + 1, l + 1));
                }
            }
        }

        Ok(Self {
            n,
            inputs,
            body,
            outputs,
            distance_mode,
            coordinates,
            nn_edges: edges,
            distances,
        })
    }

    pub fn preset(preset: Preset) -> Self {
        match preset {
            Preset::SingleGateChain5 => Self::single_gate_chain(DistanceMode::LabelChain),
            Preset::CnotT4 => Self::cnot_t(DistanceMode::Euclidean),
        }
    }

    pub fn single_gate_chain(mode: DistanceMode) -> Self {
        let coords = (0..5).map(|k| (k as f64, 0.0)).collect();
        Self::new(
            5,
            &[1],
            &[2, 3, 4],
            &[5],
            &[(1, 2), (2, 3), (3, 4), (4, 5)],
            mode,
            Some(coords),
        )
        .expect("valid preset")
    }

    /// The CNOT layout. Euclidean distances (the calibrated default) place
    /// qubits at (0,0), (1,0), (2,0), (1,1).
    pub fn cnot_t(mode: DistanceMode) -> Self {
        let coords = vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)];
        Self::new(
            4,
            &[1, 4],
            &[2],
            &[3, 4],
            &[(1, 2), (2, 3), (2, 4)],
            mode,
            Some(coords),
        )
        .expect("valid preset")
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn body(&self) -> &[usize] {
        &self.body
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// `V_m = (V_I ∪ V_M) \ V_O` in ascending label order (the measurement order).
    pub fn measured(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .inputs
            .iter()
            .chain(&self.body)
            .copied()
            .filter(|k| !self.outputs.contains(k))
            .collect();
        set.into_iter().collect()
    }

    pub fn distance_mode(&self) -> DistanceMode {
        self.distance_mode
    }

    pub fn coordinates(&self) -> Option<&[(f64, f64)]> {
        self.coordinates.as_deref()
    }

    pub fn nn_edges(&self) -> &[(usize, usize)] {
        &self.nn_edges
    }

    pub fn is_nn_edge(&self, a: usize, b: usize) -> bool {
        self.nn_edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Neighbours of `a` on the nearest-neighbour graph.
    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        self.nn_edges
            .iter()
            .filter_map(|&(x, y)| match (x == a, y == a) {
                (true, _) => Some(y),
                (_, true) => Some(x),
                _ => None,
            })
            .collect()
    }

    /// Distance between labels `k` and `l` (1-based).
    pub fn distance(&self, k: usize, l: usize) -> f64 {
        self.distances[k - 1][l - 1]
    }

    pub fn with_distance_mode(&self, mode: DistanceMode) -> Result<Self> {
        Self::new(
            self.n,
            &self.inputs,
            &self.body,
            &self.outputs,
            &self.nn_edges,
            mode,
            self.coordinates.clone(),
        )
    }
}

fn graph_distances(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<f64>>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a - 1].push(b - 1);
        adj[b - 1].push(a - 1);
    }
    let mut out = vec![vec![0.0; n]; n];
    for src in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (dst, &d) in dist.iter().enumerate() {
            if d == usize::MAX {
                return Err(Error::InvalidGeometry(format!(
                    "qubits {} and {} are disconnected",
                    src + 1,
                    dst + 1
                )));
            }
            out[src][dst] = d as f64;
        }
    }
    Ok(out)
}
