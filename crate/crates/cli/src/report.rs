//! Analysis reports and their JSON / CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;

use netdim::dimension::{profile_points, DimensionEstimate};
use netdim::entropy::Q_ONE_TOLERANCE;
use netdim::CoveringProfile;

use crate::num::{csv_cell, Sig17};

/// Header of every CSV profile block.
pub const CSV_PROFILE_HEADER: &str = "l,ln_l,n_boxes,S_q,pointwise_ratio";
pub const CSV_ESTIMATE_HEADER: &str =
    "q,label,dimension,slope,intercept,r2,mode,fit_l_min,fit_l_max,points";

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub file: String,
    pub format: String,
    pub nodes: usize,
    pub edges: usize,
    pub diameter: u32,
    pub original_nodes: usize,
    pub original_edges: usize,
    pub component_note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub q_list: Vec<Sig17>,
    pub trials: usize,
    pub seed: u64,
    pub mode: String,
    pub l_min: u32,
    pub l_max: u32,
    /// Explicit fit range, `null` for the default (whole profile).
    pub fit_range: Option<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub q: Sig17,
    pub l: u32,
    pub ln_l: Sig17,
    pub n_boxes: usize,
    #[serde(rename = "S_q")]
    pub s_q: Sig17,
    pub pointwise_ratio: Option<Sig17>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateRow {
    pub q: Option<Sig17>,
    pub label: String,
    pub dimension: Option<Sig17>,
    pub slope: Option<Sig17>,
    pub intercept: Option<Sig17>,
    pub r2: Option<Sig17>,
    pub mode: String,
    pub fit_l_min: Option<u32>,
    pub fit_l_max: Option<u32>,
    pub points: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pointwise: Vec<(u32, Sig17)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EstimateRow {
    pub fn from_result(
        q: Option<f64>,
        label: &str,
        mode: &str,
        result: &Result<DimensionEstimate, netdim::Error>,
    ) -> Self {
        match result {
            Ok(est) => EstimateRow {
                q: q.map(Sig17),
                label: label.to_string(),
                dimension: Some(Sig17(est.dimension)),
                slope: est.slope.map(Sig17),
                intercept: est.intercept.map(Sig17),
                r2: est.r_squared.map(Sig17),
                mode: mode.to_string(),
                fit_l_min: Some(est.fit_l_range.0),
                fit_l_max: Some(est.fit_l_range.1),
                points: est.points,
                pointwise: est
                    .pointwise_values
                    .iter()
                    .map(|&(l, r)| (l, Sig17(r)))
                    .collect(),
                error: None,
            },
            Err(err) => EstimateRow {
                q: q.map(Sig17),
                label: label.to_string(),
                dimension: None,
                slope: None,
                intercept: None,
                r2: None,
                mode: mode.to_string(),
                fit_l_min: None,
                fit_l_max: None,
                points: 0,
                pointwise: Vec::new(),
                error: Some(err.to_string()),
            },
        }
    }
}

/// Label of a Tsallis estimate; `q = 1` is the classical information
/// dimension.
pub fn estimate_label(q: f64) -> &'static str {
    if (q - 1.0).abs() < Q_ONE_TOLERANCE {
        "information_dimension"
    } else {
        "tsallis_dimension"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: InputInfo,
    pub settings: Settings,
    pub profile: Vec<ProfileRow>,
    pub box_counting: EstimateRow,
    pub estimates: Vec<EstimateRow>,
}

/// Profile rows for every `(q, l)` pair, grouped by `q`.
pub fn profile_rows(profile: &CoveringProfile, q_list: &[f64]) -> Result<Vec<ProfileRow>, netdim::Error> {
    let mut rows = Vec::with_capacity(q_list.len() * profile.len());
    for &q in q_list {
        for p in profile_points(profile, q)? {
            rows.push(ProfileRow {
                q: Sig17(q),
                l: p.l_b,
                ln_l: Sig17(p.ln_l),
                n_boxes: p.n_boxes,
                s_q: Sig17(p.entropy),
                pointwise_ratio: p.pointwise_ratio().map(Sig17),
            });
        }
    }
    Ok(rows)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Profile block(s) followed by a blank line and the estimates table.
    /// With more than one `q`, each profile block is preceded by `# q=<q>`.
    pub fn to_csv(&self) -> String {
        let multi = self.settings.q_list.len() > 1;
        let mut out = String::new();
        for q in &self.settings.q_list {
            if multi {
                let _ = writeln!(out, "# q={}", csv_cell(Some(q.0)));
            }
            let _ = writeln!(out, "{CSV_PROFILE_HEADER}");
            for row in self.profile.iter().filter(|r| r.q == *q) {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.l,
                    csv_cell(Some(row.ln_l.0)),
                    row.n_boxes,
                    csv_cell(Some(row.s_q.0)),
                    csv_cell(row.pointwise_ratio.map(|v| v.0)),
                );
            }
        }
        out.push('\n');
        let _ = writeln!(out, "{CSV_ESTIMATE_HEADER}");
        for e in std::iter::once(&self.box_counting).chain(&self.estimates) {
            let cell = |v: Option<Sig17>| csv_cell(v.map(|x| x.0));
            let int = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                cell(e.q),
                e.label,
                cell(e.dimension),
                cell(e.slope),
                cell(e.intercept),
                cell(e.r2),
                e.mode,
                int(e.fit_l_min),
                int(e.fit_l_max),
                e.points,
            );
        }
        out
    }
}
