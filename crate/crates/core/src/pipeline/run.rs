use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::catalog::{record_from_line, record_to_line, Catalog, CatalogMeta};
use super::PipelineError;
use crate::certifier::{certify, classify_maximal, CertifyConfig, ResultRecord};
use crate::feasibility::{branch_and_bound, SearchConfig, SearchError};
use crate::plane_graph::{canonical_code, generate_candidates, read_planar_code, PlaneGraph};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub max_level: usize,
    pub leaf_budget: usize,
    /// Boxes narrower than this in the branching variable are not split.
    pub min_width: f64,
    pub jobs: usize,
    /// Planar-code file replacing generated candidates.
    pub seed_graphs: Option<PathBuf>,
    pub out: PathBuf,
    pub resume: bool,
    /// Emit one progress line per graph on stderr.
    pub verbose: bool,
}

impl RunConfig {
    pub fn new(n: usize, out: impl Into<PathBuf>) -> Self {
        let s = SearchConfig::default();
        RunConfig {
            n,
            max_level: s.max_level,
            leaf_budget: s.leaf_budget,
            min_width: s.min_width,
            jobs: 1,
            seed_graphs: None,
            out: out.into(),
            resume: false,
            verbose: false,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(4..=11).contains(&self.n) {
            return Err(PipelineError::Config(format!("n = {} outside 4..=11", self.n)));
        }
        if self.jobs == 0 {
            return Err(PipelineError::Config("at least one worker needed".into()));
        }
        if !(self.min_width > 0.0) {
            return Err(PipelineError::Config("min width must be positive".into()));
        }
        Ok(())
    }

    pub fn search_config(&self) -> SearchConfig {
        SearchConfig {
            max_level: self.max_level,
            leaf_budget: self.leaf_budget,
            min_width: self.min_width,
            ..SearchConfig::default()
        }
    }

    /// Sidecar of finished records, one JSON line each.
    pub fn journal_path(&self) -> PathBuf {
        let mut p = self.out.clone().into_os_string();
        p.push(".journal");
        PathBuf::from(p)
    }
}

/// Candidate graphs for the run, from the seed file or generated.
pub fn candidates(cfg: &RunConfig) -> Result<Vec<PlaneGraph>, PipelineError> {
    match &cfg.seed_graphs {
        Some(path) => {
            let graphs = read_planar_code(&std::fs::read(path)?)?;
            Ok(graphs.into_iter().filter(|g| g.vertex_count() == cfg.n).collect())
        }
        None => Ok(generate_candidates(cfg.n)?.graphs),
    }
}

/// Search and certification of a single graph, with the progress line.
pub fn process_graph(g: &PlaneGraph, search: &SearchConfig, certify_cfg: &CertifyConfig) -> (ResultRecord, String) {
    let t = Instant::now();
    let rep = branch_and_bound(g, search);
    let (levels, leaves) = match &rep {
        Ok(r) => (r.levels, r.boxes().len()),
        Err(SearchError::BudgetExceeded { level, live, .. }) => (*level, *live),
        Err(_) => (0, 0),
    };
    let rec = certify(g, &rep, certify_cfg);
    let line = format!(
        "{} {} levels={levels} leaves={leaves} time={:.2}s",
        rec.code,
        rec.status.as_str(),
        t.elapsed().as_secs_f64()
    );
    (rec, line)
}

fn read_journal(path: &Path) -> Result<Vec<ResultRecord>, PipelineError> {
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        // a torn last line from an interrupted run is recomputed
        if let Ok(r) = record_from_line(&line) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Full run for one `n`: candidates, search, certification, classification,
/// persistence. Finished graphs are journalled so that `resume` skips them.
pub fn enumerate(cfg: &RunConfig) -> Result<Catalog, PipelineError> {
    cfg.validate()?;
    let graphs = candidates(cfg)?;
    let journal = cfg.journal_path();
    let mut done: Vec<ResultRecord> = if cfg.resume && journal.exists() {
        read_journal(&journal)?
    } else {
        Vec::new()
    };
    let finished: HashSet<_> = done.iter().map(|r| r.code.clone()).collect();
    let todo: Vec<&PlaneGraph> = graphs.iter().filter(|g| !finished.contains(&canonical_code(g))).collect();

    let file = OpenOptions::new()
        .create(true)
        .append(cfg.resume)
        .write(true)
        .truncate(!cfg.resume)
        .open(&journal)?;
    let search = cfg.search_config();
    let certify_cfg = CertifyConfig::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    let (tx, rx) = mpsc::channel::<(ResultRecord, String)>();
    let verbose = cfg.verbose;
    let writer = std::thread::spawn(move || -> Result<Vec<ResultRecord>, PipelineError> {
        let mut w = BufWriter::new(file);
        let mut got = Vec::new();
        for (rec, line) in rx {
            writeln!(w, "{}", record_to_line(&rec)?)?;
            w.flush()?;
            if verbose {
                eprintln!("{line}");
            }
            got.push(rec);
        }
        Ok(got)
    });
    pool.install(|| {
        todo.par_iter().for_each_with(tx, |tx, g| {
            let _ = tx.send(process_graph(g, &search, &certify_cfg));
        })
    });
    let fresh = writer
        .join()
        .map_err(|_| PipelineError::Config("journal writer panicked".into()))??;
    done.extend(fresh);

    let pruned = done.iter().filter(|r| r.status == crate::certifier::Status::Pruned).count();
    let meta = CatalogMeta {
        n: cfg.n,
        max_level: cfg.max_level,
        leaf_budget: cfg.leaf_budget,
        min_width: cfg.min_width,
        version: env!("CARGO_PKG_VERSION").into(),
        finished_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        candidates: graphs.len(),
        pruned,
        unresolved: 0,
        assumes_d_at_least_2pi_over_n: true,
    };
    let mut catalog = Catalog::from_records(meta, done);
    if catalog.embedded().next().is_some() {
        classify_maximal(&mut catalog.records, &certify_cfg)?;
    }
    catalog.write(&cfg.out)?;
    Ok(catalog)
}

/// Repeats search and certification for every record of a catalog.
pub fn recertify(catalog: &Catalog, cfg: &RunConfig) -> Result<Catalog, PipelineError> {
    let search = cfg.search_config();
    let certify_cfg = CertifyConfig::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    let graphs: Vec<PlaneGraph> = catalog.records.iter().map(|r| r.graph()).collect();
    let recs: Vec<ResultRecord> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let (rec, line) = process_graph(g, &search, &certify_cfg);
                if cfg.verbose {
                    eprintln!("{line}");
                }
                rec
            })
            .collect()
    });
    let mut meta = catalog.meta.clone();
    meta.pruned += recs.iter().filter(|r| r.status == crate::certifier::Status::Pruned).count();
    let mut out = Catalog::from_records(meta, recs);
    if out.embedded().next().is_some() {
        classify_maximal(&mut out.records, &certify_cfg)?;
    }
    Ok(out)
}
