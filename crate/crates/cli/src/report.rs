//! JSON report envelope shared by all subcommands.

use serde::Serialize;

use jordankit::{Algebra, AlgebraSpec, CheckReport, Element, SpinConstruction, Tolerances, Verdict};

use crate::CommonArgs;

#[derive(Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub algebra: AlgebraSpec,
    pub seed: u64,
    pub trials: u32,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub payload: ReportPayload,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportPayload {
    Checks(Vec<CheckReport>),
    Spectral(Box<SpectralOutcome>),
    Lattice(LatticeOutcome),
    Reconstruct {
        s_o: f64,
        invariance_residual: f64,
        atom_norm_spread: f64,
        samples: u32,
        jordan: CheckReport,
        construction: Box<SpinConstruction>,
    },
}

#[derive(Serialize)]
pub struct SpectralOutcome {
    pub element: Element,
    pub eigenvalues: Vec<f64>,
    /// Atoms of all eigenvalue groups, flattened in eigenvalue order.
    pub atoms: Vec<Element>,
    /// How many atoms belong to each eigenvalue.
    pub atom_counts: Vec<usize>,
    pub reconstruction_residual: f64,
}

#[derive(Serialize)]
pub struct LatticeOutcome {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<bool>,
}

impl LatticeOutcome {
    pub fn element(op: &str, element: Element, rank: usize) -> Self {
        LatticeOutcome { op: op.into(), element: Some(element), rank: Some(rank), value: None }
    }

    pub fn count(op: &str, rank: usize) -> Self {
        LatticeOutcome { op: op.into(), element: None, rank: Some(rank), value: None }
    }

    pub fn flag(op: &str, value: bool) -> Self {
        LatticeOutcome { op: op.into(), element: None, rank: None, value: Some(value) }
    }
}

impl Report {
    pub fn new(
        command: &str,
        algebra: &Algebra,
        common: &CommonArgs,
        tol: &Tolerances,
        payload: ReportPayload,
    ) -> Report {
        let timestamp = if common.no_timestamp {
            None
        } else {
            Some(
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        };
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            algebra: algebra.spec().clone(),
            seed: common.seed,
            trials: common.trials,
            tolerances: tol.clone(),
            timestamp,
            payload,
        }
    }

    /// Human-readable view of the same data.
    pub fn render_pretty(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("jordankit {} — {}", self.version, self.command));
        push(&mut out, format!("algebra: {}", self.algebra));
        push(&mut out, format!("seed: {}   trials: {}", self.seed, self.trials));
        match &self.payload {
            ReportPayload::Checks(reports) => {
                push(&mut out, format!("{:<16} {:<14} {:>8} {:>14}", "check", "verdict", "trials", "residual"));
                for r in reports {
                    push(
                        &mut out,
                        format!(
                            "{:<16} {:<14} {:>8} {:>14.3e}{}",
                            r.property,
                            format!("{:?}", r.verdict),
                            r.trials,
                            r.worst_residual,
                            r.witness
                                .as_ref()
                                .map(|w| format!("   [{}]", w.description))
                                .unwrap_or_default(),
                        ),
                    );
                }
            }
            ReportPayload::Spectral(s) => {
                push(&mut out, format!("eigenvalues: {:?}", s.eigenvalues));
                push(&mut out, format!("atoms per eigenvalue: {:?}", s.atom_counts));
                push(&mut out, format!("reconstruction residual: {:.3e}", s.reconstruction_residual));
            }
            ReportPayload::Lattice(l) => {
                push(&mut out, format!("op: {}", l.op));
                if let Some(rank) = l.rank {
                    push(&mut out, format!("rank: {rank}"));
                }
                if let Some(value) = l.value {
                    push(&mut out, format!("value: {value}"));
                }
                if let Some(element) = &l.element {
                    push(&mut out, format!("coords: {:?}", element.coords()));
                }
            }
            ReportPayload::Reconstruct { s_o, invariance_residual, atom_norm_spread, samples, jordan, .. } => {
                push(&mut out, format!("samples: {samples}"));
                push(&mut out, format!("s_o: {s_o:.6}"));
                push(&mut out, format!("invariance residual: {invariance_residual:.3e}"));
                push(&mut out, format!("atom norm spread: {atom_norm_spread:.3e}"));
                let verdict = if jordan.verdict == Verdict::Pass { "pass" } else { "FAIL" };
                push(&mut out, format!("jordan verification: {verdict} (residual {:.3e})", jordan.worst_residual));
            }
        }
        out
    }
}
