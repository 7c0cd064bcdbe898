//! Pool files: one JSON object, arrays written one element per line so the
//! output is stable and diffable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Provenance, Ray, RayError, RayPool};
use crate::algebra::{AlgNum, Coefficient, Ring, RingKind};
use crate::hypergraph::OrthoGraph;

pub const POOL_FORMAT: &str = "ks-atlas-pool";
pub const POOL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct PoolFile {
    format: String,
    version: u32,
    ring: RingKind,
    alphabet: Option<Vec<String>>,
    rays: Vec<[String; 3]>,
    provenance: Vec<Provenance>,
    edges: Vec<[usize; 2]>,
    triads: Vec<[usize; 3]>,
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn write_array<T: Serialize>(out: &mut String, key: &str, items: &[T], last: bool) {
    let _ = write!(out, "  {}: [", json(key));
    if items.is_empty() {
        out.push(']');
    } else {
        out.push('\n');
        for (i, it) in items.iter().enumerate() {
            let sep = if i + 1 < items.len() { "," } else { "" };
            let _ = writeln!(out, "    {}{sep}", json(it));
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

impl<Q: Coefficient> RayPool<Q> {
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format\": {},", json(POOL_FORMAT));
        let _ = writeln!(out, "  \"version\": {POOL_VERSION},");
        let _ = writeln!(out, "  \"ring\": {},", json(&self.ring().kind()));
        match self.alphabet() {
            Some(a) => {
                let syms: Vec<String> = a.symbols().iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  \"alphabet\": {},", json(&syms));
            }
            None => out.push_str("  \"alphabet\": null,\n"),
        }
        let rays: Vec<[String; 3]> = self.rays().iter().map(|r| r.coords().clone().map(|c| c.to_string())).collect();
        write_array(&mut out, "rays", &rays, false);
        write_array(&mut out, "provenance", self.provenance(), false);
        write_array(&mut out, "edges", self.edges(), false);
        write_array(&mut out, "triads", self.triads(), true);
        out.push_str("}\n");
        out
    }

    /// Parses a pool file and checks it: canonical sorted rays, and edges and
    /// triads equal to the recomputed orthogonality structure.
    pub fn from_json(text: &str) -> Result<Self, RayError> {
        let f: PoolFile = serde_json::from_str(text).map_err(|e| RayError::Format(e.to_string()))?;
        if f.format != POOL_FORMAT || f.version != POOL_VERSION {
            return Err(RayError::Format(format!("unsupported pool format {} v{}", f.format, f.version)));
        }
        let ring = Ring::new(f.ring)?;
        let alphabet = match f.alphabet {
            Some(syms) => {
                let syms = syms.iter().map(|s| AlgNum::parse(&ring, s)).collect::<Result<Vec<_>, _>>()?;
                Some(Alphabet::exact(&ring, syms)?)
            }
            None => None,
        };
        let mut rays = Vec::with_capacity(f.rays.len());
        for r in &f.rays {
            let coords = [
                AlgNum::parse(&ring, &r[0])?,
                AlgNum::parse(&ring, &r[1])?,
                AlgNum::parse(&ring, &r[2])?,
            ];
            rays.push(Ray::from_canonical(coords)?);
        }
        if rays.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RayError::Format("rays are not strictly sorted".into()));
        }
        if f.provenance.len() != rays.len() {
            return Err(RayError::Format("provenance length differs from ray count".into()));
        }
        let graph = OrthoGraph::from_edges(rays.len(), super::pool::orthogonality_edges(&rays))
            .map_err(|e| RayError::Format(e.to_string()))?;
        let mut edges = f.edges;
        edges.sort_unstable();
        let mut triads = f.triads;
        triads.sort_unstable();
        if graph.edges() != &edges[..] || graph.triads() != &triads[..] {
            return Err(RayError::Format("edges or triads disagree with the rays".into()));
        }
        Ok(RayPool::from_parts(ring, alphabet, rays, f.provenance, graph))
    }
}
