//! JSON domain files.

use std::fs;
use std::path::Path;

use gbclab::geometry::{Point2, Point3, Polygon, Polyhedron};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// On-disk form of a polygon or polyhedron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainFile {
    Polygon { vertices: Vec<[f64; 2]> },
    Polyhedron { vertices: Vec<[f64; 3]>, faces: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub enum Domain {
    Polygon(Polygon),
    Polyhedron(Polyhedron),
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid domain JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain files always serialize")
    }

    pub fn from_polygon(p: &Polygon) -> Self {
        Self::Polygon { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
    }

    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        Self::Polyhedron {
            vertices: p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
            faces: p.faces().to_vec(),
        }
    }

    /// Validates the geometry. Polygons may be given in either orientation.
    pub fn to_domain(&self) -> Result<Domain, CliError> {
        match self {
            Self::Polygon { vertices } => {
                let pts = vertices.iter().map(|&[x, y]| Point2::new(x, y)).collect();
                Polygon::new_any_orientation(pts)
                    .map(Domain::Polygon)
                    .map_err(|e| CliError::usage(format!("field `vertices`: {e}")))
            }
            Self::Polyhedron { vertices, faces } => {
                for (fi, face) in faces.iter().enumerate() {
                    if let Some((k, i)) = face.iter().enumerate().find(|(_, &i)| i >= vertices.len()) {
                        return Err(CliError::usage(format!(
                            "field `faces[{fi}][{k}]`: vertex index {i} out of range for {} vertices",
                            vertices.len()
                        )));
                    }
                }
                let pts = vertices.iter().map(|&a| Point3::from_array(a)).collect();
                Polyhedron::new(pts, faces.clone())
                    .map(Domain::Polyhedron)
                    .map_err(|e| CliError::usage(format!("fields `vertices`/`faces`: {e}")))
            }
        }
    }
}

impl Domain {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        DomainFile::parse(&text)
            .and_then(|f| f.to_domain())
            .map_err(|e| match e {
                CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
                other => other,
            })
    }

    pub fn polygon(self, path: &Path) -> Result<Polygon, CliError> {
        match self {
            Self::Polygon(p) => Ok(p),
            Self::Polyhedron(_) => Err(CliError::usage(format!("{}: expected a polygon", path.display()))),
        }
    }

    pub fn polyhedron(self, path: &Path) -> Result<Polyhedron, CliError> {
        match self {
            Self::Polyhedron(p) => Ok(p),
            Self::Polygon(_) => Err(CliError::usage(format!("{}: expected a polyhedron", path.display()))),
        }
    }
}
