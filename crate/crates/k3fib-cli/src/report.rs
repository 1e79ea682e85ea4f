//! Structured report document with a stable schema. Exact rationals are
//! serialized as strings ("3/2"), never floats.

use serde::{Deserialize, Serialize};

use k3fib::catalog::{CatalogReport, FibrationReport};

#[derive(Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub fibrations: Vec<FibrationEntry>,
    pub pass: bool,
}

#[derive(Serialize, Deserialize)]
pub struct FibrationEntry {
    pub id: u8,
    pub resolved_equation: String,
    pub fibers: Vec<FiberEntry>,
    pub mw: MwEntry,
    pub checks: ChecksEntry,
    pub notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct FiberEntry {
    pub place: String,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub euler: u32,
}

#[derive(Serialize, Deserialize)]
pub struct MwEntry {
    pub rank: u32,
    pub torsion: Vec<u32>,
    pub heights: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct ChecksEntry {
    pub fiber_config_ok: bool,
    pub euler_ok: bool,
    pub change_of_vars_ok: bool,
    pub torsion_ok: bool,
    pub heights_ok: bool,
    pub shioda_tate_ok: bool,
    pub determinant_ok: bool,
    pub torsion_injection_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbor_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist_ok: Option<bool>,
}

fn rat_string(r: &k3fib::exactalg::Rat) -> String {
    k3fib::exactalg::fmt_rat_coeff(r)
}

pub fn fibration_entry(rep: &FibrationReport) -> FibrationEntry {
    FibrationEntry {
        id: rep.id,
        resolved_equation: rep.resolved_equation.clone(),
        fibers: rep
            .fibers
            .iter()
            .map(|f| FiberEntry {
                place: f.place.clone(),
                kodaira: f.kodaira.clone(),
                euler: f.euler,
            })
            .collect(),
        mw: MwEntry {
            rank: rep.mw_rank,
            torsion: rep.torsion_orders.clone(),
            heights: rep.heights.iter().map(rat_string).collect(),
        },
        checks: ChecksEntry {
            fiber_config_ok: rep.checks.fiber_config_ok,
            euler_ok: rep.checks.euler_ok,
            change_of_vars_ok: rep.checks.change_of_vars_ok,
            torsion_ok: rep.checks.torsion_ok,
            heights_ok: rep.checks.heights_ok,
            shioda_tate_ok: rep.checks.shioda_tate_ok,
            determinant_ok: rep.checks.determinant_ok,
            torsion_injection_ok: rep.checks.torsion_injection_ok,
            neighbor_ok: rep.checks.neighbor_ok,
            twist_ok: rep.checks.twist_ok,
        },
        notes: rep.notes.clone(),
    }
}

pub fn report_document(report: &CatalogReport) -> ReportDocument {
    ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        fibrations: report.fibrations.iter().map(fibration_entry).collect(),
        pass: report.pass,
    }
}
