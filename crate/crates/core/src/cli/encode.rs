use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::config::{EncodeConfig, PathBase, SplitFiles};
use super::{write_json, Provenance};
use crate::encoding::{
    explainable_variance, layer_sweep, paired_ttest, roi_aggregate, select_voxels_ev, select_voxels_positive_r2,
    EncodingSplit, LayerFeatureSet, ModelFeatures, RepeatedResponses, RoiAtlas, RoiLevel, TTest,
};
use crate::error::{Error, Result};
use crate::io::{fmt_f64, read_atlas, read_matrix, read_merge_map, read_repeats, write_bytes};
use crate::ridge::CvPlan;

const CONVENTIONS: [&str; 4] = [
    "rows whose lagged features precede the series start are zero-filled",
    "features and responses are z-scored within each split",
    "responses are averaged over repeats before fitting and scoring",
    "explainable variance comes from the test repeats; voxels above the threshold are fitted",
];

#[derive(Debug, Serialize)]
struct VoxelRow {
    voxel: usize,
    joint: f64,
    split: Vec<f64>,
    lambdas: Vec<f64>,
    cv_r2: f64,
}

#[derive(Debug, Serialize)]
struct RoiRow {
    level: RoiLevel,
    quantity: String,
    group: String,
    count: usize,
    mean: Option<f64>,
}

#[derive(Debug, Serialize)]
struct TTestRow {
    group: String,
    n: usize,
    #[serde(flatten)]
    result: Option<TTest>,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct LayerSection {
    layer: usize,
    voxels: Vec<VoxelRow>,
    positive_r2: Vec<usize>,
    roi: Vec<RoiRow>,
    /// Paired test of the first model's split R² against the second's.
    ttests: Vec<TTestRow>,
}

#[derive(Debug, Serialize)]
struct EncodeReport {
    #[serde(flatten)]
    provenance: Provenance,
    conventions: [&'static str; 4],
    models: Vec<String>,
    lags: Vec<usize>,
    n_voxels: usize,
    explainable_variance: Option<Vec<Option<f64>>>,
    selected: Vec<usize>,
    layers: Vec<LayerSection>,
}

struct LoadedSplit {
    features: LayerFeatureSet,
    responses: RepeatedResponses,
}

/// File each `(model, layer)` matrix was read from, for error messages.
type Origins = BTreeMap<(usize, usize), String>;

fn load_split(files: &SplitFiles, name: &str, base: &PathBase) -> Result<(LoadedSplit, Origins)> {
    let repeats = read_repeats(&files.responses.iter().map(|p| base.resolve(p)).collect::<Vec<_>>())?;
    let responses = RepeatedResponses::new(repeats).map_err(|e| Error::shape(format!("{name} responses: {e}")))?;
    let n_rows = responses.n_time();
    let mut origin = BTreeMap::new();
    let mut models = Vec::with_capacity(files.features.len());
    for (m, mf) in files.features.iter().enumerate() {
        let mut layers = BTreeMap::new();
        for (&layer, path) in &mf.layers {
            let x = read_matrix(&base.resolve(path))?;
            if x.nrows() != n_rows {
                return Err(Error::shape(format!(
                    "{path}: {} rows on axis 0, but {name} responses have {n_rows}",
                    x.nrows()
                )));
            }
            origin.insert((m, layer), path.clone());
            layers.insert(layer, x);
        }
        models.push(ModelFeatures {
            name: mf.name.clone(),
            layers,
        });
    }
    Ok((
        LoadedSplit {
            features: LayerFeatureSet::new(models)?,
            responses,
        },
        origin,
    ))
}

fn check_columns(train: &LoadedSplit, test: &LoadedSplit, test_origin: &Origins) -> Result<()> {
    if train.responses.n_voxels() != test.responses.n_voxels() {
        return Err(Error::shape(format!(
            "test responses have {} voxels on axis 1, train responses have {}",
            test.responses.n_voxels(),
            train.responses.n_voxels()
        )));
    }
    let (a, b) = (train.features.models(), test.features.models());
    if a.len() != b.len() {
        return Err(Error::shape(format!(
            "train lists {} models, test lists {}",
            a.len(),
            b.len()
        )));
    }
    for (m, (ma, mb)) in a.iter().zip(b).enumerate() {
        for (layer, x) in &ma.layers {
            let y = mb.layers.get(layer).ok_or_else(|| {
                Error::shape(format!(
                    "model {} layer {layer} is missing from the test split",
                    ma.name
                ))
            })?;
            if x.ncols() != y.ncols() {
                return Err(Error::shape(format!(
                    "{}: {} columns on axis 1, train features for model {} layer {layer} have {}",
                    test_origin[&(m, *layer)],
                    y.ncols(),
                    ma.name,
                    x.ncols()
                )));
            }
        }
    }
    Ok(())
}

/// Writes `encode_report.json` plus `voxels.csv`, `roi.csv` and
/// `ttest.csv`. The encoding pipeline draws no random numbers, so
/// `--seed` has no effect.
pub fn cmd_encode(cfg: &EncodeConfig, _seed: Option<u64>, base: &PathBase, out: &Path) -> Result<()> {
    let (train, _) = load_split(&cfg.train, "train", base)?;
    let (test, test_origin) = load_split(&cfg.test, "test", base)?;
    check_columns(&train, &test, &test_origin)?;
    let lags = cfg.delays.lags().map_err(|e| Error::Config(e.to_string()))?;
    let n_voxels = train.responses.n_voxels();

    let ev = if test.responses.n_repeats() >= 2 {
        Some(explainable_variance(&test.responses)?)
    } else {
        None
    };
    let selected_mask = match &ev {
        Some(ev) => select_voxels_ev(ev, cfg.ev_threshold),
        None => vec![true; n_voxels],
    };
    let selected: Vec<usize> = (0..n_voxels).filter(|&v| selected_mask[v]).collect();
    if selected.is_empty() {
        return Err(Error::arg(format!(
            "no voxel has explainable variance above {}",
            cfg.ev_threshold
        )));
    }

    let atlas = match &cfg.atlas {
        Some(a) => {
            let merge = match &a.merge_map {
                Some(p) => read_merge_map(&base.resolve(p))?,
                None => BTreeMap::new(),
            };
            let atlas = read_atlas(&base.resolve(&a.labels), merge)?;
            if atlas.n_voxels() != n_voxels {
                return Err(Error::shape(format!(
                    "{}: {} voxels, responses have {n_voxels} on axis 1",
                    a.labels,
                    atlas.n_voxels()
                )));
            }
            Some(atlas.select(&selected_mask)?)
        }
        None => None,
    };

    let layers = match &cfg.layers {
        Some(l) => l.clone(),
        None => train.features.common_layers(),
    };
    if layers.is_empty() {
        return Err(Error::arg("no layer is shared by every model"));
    }
    let y_train = train.responses.select_voxels(&selected_mask)?.mean();
    let y_test = test.responses.select_voxels(&selected_mask)?.mean();
    let plan = CvPlan::contiguous(y_train.nrows(), cfg.cv.n_folds, cfg.cv.grid.clone())?;
    let sweep = layer_sweep(
        &EncodingSplit::new(train.features, y_train)?,
        &EncodingSplit::new(test.features, y_test)?,
        &layers,
        &cfg.delays,
        &plan,
    )?;

    let mut sections = Vec::with_capacity(sweep.layers.len());
    for rec in &sweep.layers {
        let positive = select_voxels_positive_r2(&rec.joint);
        let voxels = selected
            .iter()
            .enumerate()
            .map(|(i, &v)| VoxelRow {
                voxel: v,
                joint: rec.joint[i],
                split: rec.split.iter().map(|s| s[i]).collect(),
                lambdas: rec.lambdas[i].clone(),
                cv_r2: rec.cv_r2[i],
            })
            .collect();
        let (roi, ttests) = match &atlas {
            Some(atlas) => (
                roi_rows(atlas, &sweep.models, &rec.joint, &rec.split, &positive)?,
                ttest_rows(atlas, &rec.split, &positive)?,
            ),
            None => (Vec::new(), ttest_rows_all(&rec.split, &positive)?),
        };
        sections.push(LayerSection {
            layer: rec.layer,
            voxels,
            positive_r2: selected
                .iter()
                .zip(&positive)
                .filter(|(_, &p)| p)
                .map(|(&v, _)| v)
                .collect(),
            roi,
            ttests,
        });
    }

    let report = EncodeReport {
        provenance: Provenance::of(cfg),
        conventions: CONVENTIONS,
        models: sweep.models.clone(),
        lags,
        n_voxels,
        explainable_variance: ev,
        selected,
        layers: sections,
    };
    write_json(&out.join("encode_report.json"), &report)?;
    write_extracts(&report, out)
}

fn roi_rows(
    atlas: &RoiAtlas,
    models: &[String],
    joint: &[f64],
    split: &[Vec<f64>],
    positive: &[bool],
) -> Result<Vec<RoiRow>> {
    let mut levels = vec![RoiLevel::Roi];
    if !atlas.merge_map().is_empty() {
        levels.push(RoiLevel::Area);
    }
    let quantities = std::iter::once(("joint".to_string(), joint)).chain(
        models
            .iter()
            .zip(split)
            .map(|(m, s)| (format!("split:{m}"), s.as_slice())),
    );
    let mut rows = Vec::new();
    for (quantity, values) in quantities {
        for &level in &levels {
            for g in roi_aggregate(values, atlas, level, Some(positive))? {
                rows.push(RoiRow {
                    level,
                    quantity: quantity.clone(),
                    group: g.group,
                    count: g.count,
                    mean: g.mean,
                });
            }
        }
    }
    Ok(rows)
}

fn ttest_row(group: String, a: Vec<f64>, b: Vec<f64>) -> Result<TTestRow> {
    let n = a.len();
    match paired_ttest(&a, &b) {
        Ok(t) => Ok(TTestRow {
            group,
            n,
            result: Some(t),
            error: None,
        }),
        Err(e @ Error::UndefinedStatistic(_)) => Ok(TTestRow {
            group,
            n,
            result: None,
            error: Some(e.to_string()),
        }),
        Err(e) => Err(e),
    }
}

fn ttest_rows_all(split: &[Vec<f64>], positive: &[bool]) -> Result<Vec<TTestRow>> {
    if split.len() < 2 {
        return Ok(Vec::new());
    }
    let pick = |s: &[f64]| s.iter().zip(positive).filter(|(_, &p)| p).map(|(v, _)| *v).collect();
    Ok(vec![ttest_row("all".into(), pick(&split[0]), pick(&split[1]))?])
}

fn ttest_rows(atlas: &RoiAtlas, split: &[Vec<f64>], positive: &[bool]) -> Result<Vec<TTestRow>> {
    let mut rows = ttest_rows_all(split, positive)?;
    if split.len() < 2 {
        return Ok(rows);
    }
    let mut groups: BTreeMap<&str, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for (i, label) in atlas.labels().iter().enumerate() {
        let slot = groups.entry(label).or_default();
        if positive[i] {
            slot.0.push(split[0][i]);
            slot.1.push(split[1][i]);
        }
    }
    for (g, (a, b)) in groups {
        rows.push(ttest_row(g.to_string(), a, b)?);
    }
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn write_extracts(report: &EncodeReport, out: &Path) -> Result<()> {
    let ev_of = |v: usize| report.explainable_variance.as_ref().and_then(|e| e[v]);

    let mut voxels = String::from("layer,voxel,ev,joint,cv_r2");
    for m in &report.models {
        voxels.push_str(&format!(",split:{m}"));
    }
    voxels.push('\n');
    let mut roi = String::from("layer,level,quantity,group,count,mean\n");
    let mut ttest = String::from("layer,group,n,t,p_two_tailed,dof,error\n");
    for s in &report.layers {
        for r in &s.voxels {
            voxels.push_str(&format!(
                "{},{},{},{},{}",
                s.layer,
                r.voxel,
                opt(ev_of(r.voxel)),
                fmt_f64(r.joint),
                fmt_f64(r.cv_r2)
            ));
            for v in &r.split {
                voxels.push_str(&format!(",{}", fmt_f64(*v)));
            }
            voxels.push('\n');
        }
        for r in &s.roi {
            let level = match r.level {
                RoiLevel::Roi => "roi",
                RoiLevel::Area => "area",
            };
            roi.push_str(&format!(
                "{},{level},{},{},{},{}\n",
                s.layer,
                r.quantity,
                r.group,
                r.count,
                opt(r.mean)
            ));
        }
        for r in &s.ttests {
            let (t, p, d) = match &r.result {
                Some(x) => (fmt_f64(x.t), fmt_f64(x.p_two_tailed), fmt_f64(x.dof)),
                None => Default::default(),
            };
            let err = r.error.as_deref().unwrap_or("").replace(',', ";");
            ttest.push_str(&format!("{},{},{},{t},{p},{d},{err}\n", s.layer, r.group, r.n));
        }
    }
    write_bytes(&out.join("voxels.csv"), voxels.as_bytes())?;
    write_bytes(&out.join("roi.csv"), roi.as_bytes())?;
    write_bytes(&out.join("ttest.csv"), ttest.as_bytes())
}
