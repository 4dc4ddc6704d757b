//! End-to-end runs: candidates, search, certification, persistence,
//! comparison with the published tables and figure export.

mod catalog;
mod reference;
mod run;
mod svg;

pub use catalog::{record_from_line, record_to_line, Catalog, CatalogMeta};
pub use reference::{
    d_tolerance, load_reference, parse_reference, verify_reference, ReferenceReport, ReferenceRow, RowMatch,
    REFERENCE_CSV,
};
pub use run::{candidates, enumerate, process_graph, recertify, RunConfig};
pub use svg::{count_elements, export_svg, graph_svg, sphere_svg, ExportOptions, ViewAxis};

use crate::certifier::CertifyError;
use crate::plane_graph::GraphError;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed input: {0}")]
    Format(String),
}
