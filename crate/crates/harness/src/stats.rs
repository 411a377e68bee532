//! Search statistics per domain, from match telemetry.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::game::GameId;
use crate::record::MatchSummary;
use crate::tournament::align;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainStats {
    /// `battlecity`, or `microrts-<scenario>`.
    pub domain: String,
    pub searches: usize,
    pub min_search_ms: f64,
    pub max_search_ms: f64,
    pub min_branching: u64,
    pub max_branching: u64,
    pub max_leaves: u64,
    pub max_lookahead_cycles: u64,
    pub max_lookahead_s: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub domains: Vec<DomainStats>,
}

pub fn domain_of(summary: &MatchSummary) -> String {
    match summary.config.game {
        GameId::BattleCity => "battlecity".to_string(),
        GameId::MicroRts => format!("microrts-{}", summary.config.map),
    }
}

/// Aggregates every search found in `matches`, one row per domain in order of
/// first appearance. Matches without searches contribute nothing.
pub fn stats_report(matches: &[MatchSummary]) -> StatsReport {
    let mut domains: Vec<DomainStats> = Vec::new();
    for m in matches {
        let name = domain_of(m);
        for t in &m.telemetry {
            let i = match domains.iter().position(|d| d.domain == name) {
                Some(i) => i,
                None => {
                    domains.push(DomainStats {
                        domain: name.clone(),
                        searches: 0,
                        min_search_ms: f64::INFINITY,
                        max_search_ms: 0.0,
                        min_branching: u64::MAX,
                        max_branching: 0,
                        max_leaves: 0,
                        max_lookahead_cycles: 0,
                        max_lookahead_s: 0.0,
                    });
                    domains.len() - 1
                }
            };
            let d = &mut domains[i];
            d.searches += 1;
            d.min_search_ms = d.min_search_ms.min(t.search_ms);
            d.max_search_ms = d.max_search_ms.max(t.search_ms);
            d.min_branching = d.min_branching.min(t.min_branching);
            d.max_branching = d.max_branching.max(t.max_branching);
            d.max_leaves = d.max_leaves.max(t.leaves);
            if t.lookahead_cycles >= d.max_lookahead_cycles {
                d.max_lookahead_cycles = t.lookahead_cycles;
                d.max_lookahead_s = t.lookahead_cycles as f64 / m.config.cycles_per_second as f64;
            }
        }
    }
    StatsReport { domains }
}

impl StatsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "domain,searches,min_search_ms,max_search_ms,min_branching,max_branching,max_leaves,max_lookahead_cycles,max_lookahead_s\n",
        );
        for d in &self.domains {
            writeln!(
                out,
                "{},{},{:.3},{:.3},{},{},{},{},{:.2}",
                d.domain,
                d.searches,
                d.min_search_ms,
                d.max_search_ms,
                d.min_branching,
                d.max_branching,
                d.max_leaves,
                d.max_lookahead_cycles,
                d.max_lookahead_s
            )
            .unwrap();
        }
        out
    }

    /// One column per domain, one row per figure.
    pub fn to_text(&self) -> String {
        if self.domains.is_empty() {
            return String::new();
        }
        let row = |label: &str, f: &dyn Fn(&DomainStats) -> String| {
            std::iter::once(label.to_string())
                .chain(self.domains.iter().map(f))
                .collect::<Vec<_>>()
        };
        let rows = vec![
            row("", &|d| d.domain.clone()),
            row("Searches", &|d| d.searches.to_string()),
            row("Search Time", &|d| {
                format!("{} - {}", ms(d.min_search_ms), ms(d.max_search_ms))
            }),
            row("Branching", &|d| {
                format!("{} - {}", d.min_branching, d.max_branching)
            }),
            row("Max Leaves", &|d| d.max_leaves.to_string()),
            row("Max Depth", &|d| format!("{:.2}s", d.max_lookahead_s)),
        ];
        align(&rows)
    }
}

fn ms(v: f64) -> String {
    if v >= 1000.0 {
        format!("{:.2}s", v / 1000.0)
    } else {
        format!("{v:.1}ms")
    }
}
