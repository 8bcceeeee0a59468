//! JSON wire formats for frames, models, and morphism maps.

use crate::error::{Error, Result};
use crate::frame::{OneFrame, TwoFrame};
use crate::semantics::Model;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One- or two-sorted frame file:
/// `{"kind":"one-frame","n":4,"edges":[[0,1]],"symmetric":true}` or
/// `{"kind":"two-frame","points":["a"],"lines":["l"],"incidence":[["a","l"]]}`.
/// With `"symmetric": true` the loader takes the symmetric closure of
/// the edge list.
#[derive(Clone, Serialize, Deserialize, Debug)]
#[serde(tag = "kind")]
pub enum FrameFile {
    #[serde(rename = "one-frame")]
    One {
        n: usize,
        edges: Vec<(usize, usize)>,
        #[serde(default)]
        symmetric: bool,
    },
    #[serde(rename = "two-frame")]
    Two {
        points: Vec<String>,
        lines: Vec<String>,
        incidence: Vec<(String, String)>,
    },
}

impl FrameFile {
    pub fn to_one_frame(&self) -> Result<OneFrame> {
        match self {
            FrameFile::One { n, edges, symmetric } => {
                if *symmetric {
                    OneFrame::symmetric(*n, edges)
                } else {
                    OneFrame::new(*n, edges)
                }
            }
            FrameFile::Two { .. } => Err(Error::InvalidInput(
                "expected a one-frame, found a two-frame".into(),
            )),
        }
    }

    pub fn to_two_frame(&self) -> Result<TwoFrame> {
        match self {
            FrameFile::Two { points, lines, incidence } => {
                TwoFrame::from_labels(points.clone(), lines.clone(), incidence)
            }
            FrameFile::One { .. } => Err(Error::InvalidInput(
                "expected a two-frame, found a one-frame".into(),
            )),
        }
    }

    pub fn from_one_frame(frame: &OneFrame) -> FrameFile {
        if frame.is_symmetric() {
            FrameFile::One {
                n: frame.n(),
                edges: frame.undirected_edges(),
                symmetric: true,
            }
        } else {
            FrameFile::One { n: frame.n(), edges: frame.edges(), symmetric: false }
        }
    }

    pub fn from_two_frame(frame: &TwoFrame) -> FrameFile {
        FrameFile::Two {
            points: frame.points().to_vec(),
            lines: frame.lines().to_vec(),
            incidence: frame
                .incidence()
                .iter()
                .map(|&(p, l)| {
                    (frame.points()[p].clone(), frame.lines()[l].clone())
                })
                .collect(),
        }
    }
}

/// Model file: `{"kind":"model","frame":{...},"valuation":{"p":[0,2]}}`.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct ModelFile {
    pub kind: String,
    pub frame: FrameFile,
    pub valuation: BTreeMap<String, Vec<usize>>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<Model> {
        if self.kind != "model" {
            return Err(Error::InvalidInput(format!(
                "expected kind \"model\", found {:?}",
                self.kind
            )));
        }
        let frame = self.frame.to_one_frame()?;
        let valuation = self
            .valuation
            .iter()
            .map(|(p, ws)| (p.clone(), ws.iter().copied().collect()))
            .collect();
        Model::new(frame, valuation)
    }

    pub fn from_model(model: &Model) -> ModelFile {
        ModelFile {
            kind: "model".into(),
            frame: FrameFile::from_one_frame(model.frame()),
            valuation: model
                .valuation()
                .iter()
                .map(|(p, ws)| (p.clone(), ws.iter().copied().collect()))
                .collect(),
        }
    }
}

/// Morphism file: `{"kind":"morphism","map":{"0":0,"1":0}}`. Keys are
/// source carrier indices (two-sorted carriers indexed points first).
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct MorphismFile {
    pub kind: String,
    pub map: BTreeMap<String, usize>,
}

impl MorphismFile {
    pub fn to_map(&self, carrier_size: usize) -> Result<Vec<usize>> {
        if self.kind != "morphism" {
            return Err(Error::InvalidInput(format!(
                "expected kind \"morphism\", found {:?}",
                self.kind
            )));
        }
        let mut map = vec![usize::MAX; carrier_size];
        for (key, &img) in &self.map {
            let src: usize = key
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad map key {key:?}")))?;
            if src >= carrier_size {
                return Err(Error::VertexOutOfRange { v: src, n: carrier_size });
            }
            map[src] = img;
        }
        if let Some(missing) = map.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "map is missing source vertex {missing}"
            )));
        }
        Ok(map)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}
