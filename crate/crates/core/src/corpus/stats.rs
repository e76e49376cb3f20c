//! Per-category corpus statistics.
//!
//! Term lengths are counted in Unicode scalar values (chars) on both the
//! source and reference sides. Context length is the character count of
//! the source sentence minus the span length. Averages on the target
//! side cover only instances that carry a reference-side span.

use serde::{Deserialize, Serialize};

use super::{Corpus, CulturalCategory};
use crate::error::{Error, Result};
use crate::report::Table;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryStats {
    pub category: CulturalCategory,
    pub count: usize,
    /// Percentage of the corpus, unrounded.
    pub ratio: f64,
    pub avg_source_term_len: f64,
    pub avg_target_term_len: f64,
    pub avg_context_len: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusStats {
    /// Rows ordered by count, descending; ties broken by category name.
    pub per_category: Vec<CategoryStats>,
    pub total: usize,
    pub total_avg_source_term_len: f64,
    pub total_avg_target_term_len: f64,
    pub total_avg_context_len: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run_id: Option<String>,
}

struct Accum {
    count: usize,
    src_len: usize,
    tgt_len: usize,
    tgt_n: usize,
    ctx_len: usize,
}

/// Tallies counts, ratios and average span lengths per category.
pub fn corpus_stats(corpus: &Corpus) -> Result<CorpusStats> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut acc: Vec<(CulturalCategory, Accum)> = CulturalCategory::ALL
        .iter()
        .map(|&c| {
            (
                c,
                Accum {
                    count: 0,
                    src_len: 0,
                    tgt_len: 0,
                    tgt_n: 0,
                    ctx_len: 0,
                },
            )
        })
        .collect();

    for inst in &corpus.instances {
        let slot = acc
            .iter_mut()
            .find(|(c, _)| *c == inst.category)
            .map(|(_, a)| a)
            .expect("all categories present");
        slot.count += 1;
        slot.src_len += inst.source_span.len();
        if let Some(span) = &inst.reference_span {
            slot.tgt_len += span.len();
            slot.tgt_n += 1;
        }
        slot.ctx_len += inst.context_len();
    }

    let total = corpus.len();
    let mut per_category: Vec<CategoryStats> = acc
        .into_iter()
        .filter(|(_, a)| a.count > 0)
        .map(|(category, a)| CategoryStats {
            category,
            count: a.count,
            ratio: a.count as f64 / total as f64 * 100.0,
            avg_source_term_len: a.src_len as f64 / a.count as f64,
            avg_target_term_len: if a.tgt_n > 0 {
                a.tgt_len as f64 / a.tgt_n as f64
            } else {
                0.0
            },
            avg_context_len: a.ctx_len as f64 / a.count as f64,
        })
        .collect();
    per_category.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.category.as_str().cmp(b.category.as_str()))
    });

    let tgt_n: usize = corpus
        .instances
        .iter()
        .filter(|i| i.reference_span.is_some())
        .count();
    Ok(CorpusStats {
        per_category,
        total,
        total_avg_source_term_len: corpus
            .instances
            .iter()
            .map(|i| i.source_span.len())
            .sum::<usize>() as f64
            / total as f64,
        total_avg_target_term_len: if tgt_n > 0 {
            corpus
                .instances
                .iter()
                .filter_map(|i| i.reference_span.as_ref().map(|s| s.len()))
                .sum::<usize>() as f64
                / tgt_n as f64
        } else {
            0.0
        },
        total_avg_context_len: corpus
            .instances
            .iter()
            .map(|i| i.context_len())
            .sum::<usize>() as f64
            / total as f64,
        run_id: None,
    })
}

/// Renders the stats as an aligned plain-text table mirroring the
/// benchmark-statistics layout (count, ratio, term lengths, context).
pub fn render_stats_table(stats: &CorpusStats) -> String {
    let mut table = Table::new(vec![
        "Category",
        "Count",
        "Ratio (%)",
        "Term Len Src",
        "Term Len Tgt",
        "Context Src",
    ]);
    for row in &stats.per_category {
        table.row(vec![
            row.category.to_string(),
            row.count.to_string(),
            format!("{:.1}", row.ratio),
            format!("{:.2}", row.avg_source_term_len),
            format!("{:.2}", row.avg_target_term_len),
            format!("{:.2}", row.avg_context_len),
        ]);
    }
    table.row(vec![
        "Total/Avg".into(),
        stats.total.to_string(),
        "100.0".into(),
        format!("{:.2}", stats.total_avg_source_term_len),
        format!("{:.2}", stats.total_avg_target_term_len),
        format!("{:.2}", stats.total_avg_context_len),
    ]);
    table.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CorpusMeta, Domain, Instance, Span};

    fn inst(id: &str, category: CulturalCategory, span_len: usize) -> Instance {
        let source: String = "字".repeat(span_len + 4);
        Instance {
            id: id.into(),
            source_text: source,
            reference_text: "a reference rendering".into(),
            source_span: Span::new(2, 2 + span_len),
            reference_span: Some(Span::new(0, 1)),
            category,
            explication: "explained.".into(),
            standard_equivalent: None,
            domain: Domain::Literary,
        }
    }

    #[test]
    fn single_instance_stats() {
        let corpus = Corpus::from_instances(
            vec![inst("a", CulturalCategory::Material, 3)],
            CorpusMeta::default(),
        )
        .unwrap();
        let stats = corpus_stats(&corpus).unwrap();
        assert_eq!(stats.total, 1);
        assert_eq!(stats.per_category.len(), 1);
        let row = &stats.per_category[0];
        assert_eq!(row.count, 1);
        assert!((row.ratio - 100.0).abs() < 1e-12);
        assert!((row.avg_source_term_len - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ratios_sum_to_100_and_counts_to_total() {
        let mut instances = Vec::new();
        let spec = [
            (CulturalCategory::Linguistic, 7),
            (CulturalCategory::Social, 5),
            (CulturalCategory::Material, 3),
            (CulturalCategory::Ecological, 2),
            (CulturalCategory::Religious, 1),
        ];
        let mut n = 0;
        for (cat, count) in spec {
            for _ in 0..count {
                n += 1;
                instances.push(inst(&format!("i{n}"), cat, 2));
            }
        }
        let corpus = Corpus::from_instances(instances, CorpusMeta::default()).unwrap();
        let stats = corpus_stats(&corpus).unwrap();
        let ratio_sum: f64 = stats.per_category.iter().map(|r| r.ratio).sum();
        assert!((ratio_sum - 100.0).abs() < 0.1);
        let count_sum: usize = stats.per_category.iter().map(|r| r.count).sum();
        assert_eq!(count_sum, stats.total);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let corpus = Corpus {
            instances: vec![],
            metadata: CorpusMeta::default(),
        };
        assert!(corpus_stats(&corpus).is_err());
    }

    #[test]
    fn counts_are_permutation_invariant() {
        let mut instances = vec![
            inst("a", CulturalCategory::Material, 2),
            inst("b", CulturalCategory::Social, 3),
            inst("c", CulturalCategory::Material, 4),
        ];
        let corpus = Corpus::from_instances(instances.clone(), CorpusMeta::default()).unwrap();
        let s1 = corpus_stats(&corpus).unwrap();
        instances.reverse();
        let corpus2 = Corpus::from_instances(instances, CorpusMeta::default()).unwrap();
        let s2 = corpus_stats(&corpus2).unwrap();
        assert_eq!(
            serde_json::to_string(&s1.per_category).unwrap(),
            serde_json::to_string(&s2.per_category).unwrap()
        );
    }
}
