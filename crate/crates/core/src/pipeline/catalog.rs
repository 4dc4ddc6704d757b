use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::certifier::{Flags, ResultRecord, Status};
use crate::plane_graph::CanonicalCode;
use crate::sphere_geom::{Embedding, SpherePoint};

/// Run metadata stored as the first catalog line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogMeta {
    pub n: usize,
    pub max_level: usize,
    pub leaf_budget: usize,
    pub min_width: f64,
    pub version: String,
    /// Seconds since the Unix epoch at completion.
    pub finished_at: u64,
    pub candidates: usize,
    pub pruned: usize,
    pub unresolved: usize,
    /// Search restricted to `d >= 2 pi / n`.
    pub assumes_d_at_least_2pi_over_n: bool,
}

/// Embedded and unresolved records sorted by canonical code.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    pub meta: CatalogMeta,
    pub records: Vec<ResultRecord>,
}

impl Catalog {
    /// Keeps the records worth listing and fixes their order.
    pub fn from_records(mut meta: CatalogMeta, all: Vec<ResultRecord>) -> Catalog {
        let mut records: Vec<ResultRecord> = all.into_iter().filter(|r| r.status != Status::Pruned).collect();
        records.sort_by(|a, b| a.code.cmp(&b.code));
        records.dedup_by(|a, b| a.code == b.code);
        meta.unresolved = records.iter().filter(|r| r.status == Status::Unresolved).count();
        Catalog { meta, records }
    }

    pub fn embedded(&self) -> impl Iterator<Item = &ResultRecord> {
        self.records.iter().filter(|r| r.status == Status::Embedded)
    }

    pub fn write(&self, path: &Path) -> Result<(), PipelineError> {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "{}", serde_json::to_string(&self.meta)?)?;
        for r in &self.records {
            writeln!(w, "{}", record_to_line(r)?)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Catalog, PipelineError> {
        let mut lines = BufReader::new(File::open(path)?).lines();
        let first = lines.next().ok_or_else(|| PipelineError::Format("empty catalog file".into()))??;
        let meta: CatalogMeta = serde_json::from_str(&first)?;
        let mut records = Vec::new();
        for line in lines {
            let line = line?;
            if !line.trim().is_empty() {
                records.push(record_from_line(&line)?);
            }
        }
        Ok(Catalog { meta, records })
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    d: f64,
    points: Vec<[f64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct FlagsJson {
    maximal: bool,
    d_irreducible: bool,
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    n: usize,
    code: String,
    status: String,
    d_min: Option<f64>,
    d_max: Option<f64>,
    flags: FlagsJson,
    embedding: Option<EmbeddingJson>,
    #[serde(default)]
    extremes: Vec<EmbeddingJson>,
    #[serde(default)]
    note: Option<String>,
}

fn emb_json(e: &Embedding) -> EmbeddingJson {
    EmbeddingJson {
        d: e.d,
        points: e.points.iter().map(|p| [p.x, p.y, p.z]).collect(),
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// One JSON line. Floats use the shortest representation that reads back to
/// the same double.
pub fn record_to_line(r: &ResultRecord) -> Result<String, PipelineError> {
    let j = RecordJson {
        n: r.n,
        code: r.code.to_hex(),
        status: r.status.as_str().into(),
        d_min: finite(r.d_min),
        d_max: finite(r.d_max),
        flags: FlagsJson {
            maximal: r.flags.maximal,
            d_irreducible: r.flags.d_irreducible,
        },
        embedding: r.embedding.as_ref().map(emb_json),
        extremes: r.extremes.iter().map(emb_json).collect(),
        note: r.note.clone(),
    };
    Ok(serde_json::to_string(&j)?)
}

pub fn record_from_line(line: &str) -> Result<ResultRecord, PipelineError> {
    let j: RecordJson = serde_json::from_str(line)?;
    let code = CanonicalCode::from_hex(&j.code).ok_or_else(|| PipelineError::Format(format!("bad code {}", j.code)))?;
    let graph = code.to_graph()?;
    let status = Status::parse(&j.status).ok_or_else(|| PipelineError::Format(format!("bad status {}", j.status)))?;
    let emb = |e: EmbeddingJson| -> Result<Embedding, PipelineError> {
        if e.points.len() != graph.vertex_count() {
            return Err(PipelineError::Format("point count differs from graph".into()));
        }
        let pts = e.points.iter().map(|&[x, y, z]| SpherePoint { x, y, z }).collect();
        Ok(Embedding::new(graph.clone(), pts, e.d))
    };
    Ok(ResultRecord {
        n: j.n,
        code,
        status,
        d_min: j.d_min.unwrap_or(f64::NAN),
        d_max: j.d_max.unwrap_or(f64::NAN),
        flags: Flags {
            maximal: j.flags.maximal,
            d_irreducible: j.flags.d_irreducible,
        },
        embedding: j.embedding.map(emb).transpose()?,
        extremes: j.extremes.into_iter().map(emb).collect::<Result<_, _>>()?,
        note: j.note,
    })
}
