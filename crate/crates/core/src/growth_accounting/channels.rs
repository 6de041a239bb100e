//! Additive decomposition of a cumulative output change into channels, each
//! attributed to sanctions (and other politically induced restrictions) or
//! to other causes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest gap allowed between a stated node value and its children's sum.
/// Published tables round to one decimal.
pub const ADDITIVITY_TOLERANCE: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribution {
    Sanctions,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchemaNode {
    Group {
        key: String,
        label: String,
        children: Vec<SchemaNode>,
    },
    /// A leaf read directly from the inputs and attributed as a whole.
    Leaf {
        key: String,
        label: String,
        attribution: Attribution,
    },
    /// A leaf read from the inputs and divided at the sanctions share.
    SplitLeaf { key: String, label: String },
}

impl SchemaNode {
    pub fn group(key: &str, label: &str, children: Vec<SchemaNode>) -> Self {
        SchemaNode::Group { key: key.into(), label: label.into(), children }
    }

    pub fn leaf(key: &str, label: &str, attribution: Attribution) -> Self {
        SchemaNode::Leaf { key: key.into(), label: label.into(), attribution }
    }

    pub fn split(key: &str, label: &str) -> Self {
        SchemaNode::SplitLeaf { key: key.into(), label: label.into() }
    }

    pub fn key(&self) -> &str {
        match self {
            SchemaNode::Group { key, .. } | SchemaNode::Leaf { key, .. } | SchemaNode::SplitLeaf { key, .. } => key,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSchema {
    pub root: SchemaNode,
}

impl ChannelSchema {
    /// Output change split into oil GDP and non-oil GDP, with non-oil GDP
    /// driven by import capacity, TFP and factor accumulation.
    pub fn venezuela_2012_2020() -> Self {
        use Attribution::*;
        let root = SchemaNode::group(
            "total",
            "Change in per capita GDP",
            vec![
                SchemaNode::split("oil_gdp", "Oil GDP"),
                SchemaNode::group(
                    "non_oil_gdp",
                    "Non-oil GDP",
                    vec![
                        SchemaNode::group(
                            "import_capacity",
                            "Import capacity",
                            vec![
                                SchemaNode::group(
                                    "oil_exports",
                                    "Oil exports",
                                    vec![
                                        SchemaNode::leaf("oil_price", "Oil price", Other),
                                        SchemaNode::split("oil_production", "Oil production"),
                                    ],
                                ),
                                SchemaNode::leaf("credit_loss", "Permanent loss of access to credit", Sanctions),
                            ],
                        ),
                        SchemaNode::group(
                            "tfp",
                            "TFP",
                            vec![
                                SchemaNode::leaf("tfp_sanctions", "Sanctions and toxification effects", Sanctions),
                                SchemaNode::leaf("tfp_other", "Other causes", Other),
                            ],
                        ),
                        SchemaNode::group(
                            "factor_accumulation",
                            "Factor Accumulation",
                            vec![
                                SchemaNode::leaf("factor_sanctions", "Sanctions and toxification effects", Sanctions),
                                SchemaNode::leaf("factor_other", "Other causes", Other),
                            ],
                        ),
                    ],
                ),
            ],
        );
        ChannelSchema { root }
    }

    /// Keys the inputs must supply, sorted.
    pub fn leaf_keys(&self) -> Vec<String> {
        self.collect_keys().0.into_iter().collect()
    }

    fn collect_keys(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        fn walk(node: &SchemaNode, leaves: &mut BTreeSet<String>, groups: &mut BTreeSet<String>) {
            match node {
                SchemaNode::Group { key, children, .. } => {
                    groups.insert(key.clone());
                    children.iter().for_each(|c| walk(c, leaves, groups));
                }
                SchemaNode::Leaf { key, .. } | SchemaNode::SplitLeaf { key, .. } => {
                    leaves.insert(key.clone());
                }
            }
        }
        let mut leaves = BTreeSet::new();
        let mut groups = BTreeSet::new();
        walk(&self.root, &mut leaves, &mut groups);
        (leaves, groups)
    }
}

/// Leaf values plus optional stated values for interior nodes (as printed in
/// a published table). Units: percent of initial GDP.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChannelInputs {
    pub leaves: BTreeMap<String, f64>,
    pub stated: BTreeMap<String, f64>,
}

impl ChannelInputs {
    /// Routes `name -> value` pairs: schema leaves become leaf inputs, schema
    /// groups become stated totals, anything else is a structural error.
    pub fn from_named(values: impl IntoIterator<Item = (String, f64)>, schema: &ChannelSchema) -> Result<Self> {
        let (leaf_keys, group_keys) = schema.collect_keys();
        let mut inputs = ChannelInputs::default();
        let mut unmatched = Vec::new();
        for (name, value) in values {
            if leaf_keys.contains(&name) {
                inputs.leaves.insert(name, value);
            } else if group_keys.contains(&name) {
                inputs.stated.insert(name, value);
            } else {
                unmatched.push(name);
            }
        }
        if !unmatched.is_empty() {
            return Err(Error::Structural(unmatched));
        }
        Ok(inputs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelNode {
    pub key: String,
    pub name: String,
    pub value: f64,
    pub attribution: Option<Attribution>,
    pub children: Vec<ChannelNode>,
}

impl ChannelNode {
    /// Depth-first (depth, node) sequence in table order.
    pub fn walk(&self) -> Vec<(usize, &ChannelNode)> {
        fn go<'a>(n: &'a ChannelNode, depth: usize, out: &mut Vec<(usize, &'a ChannelNode)>) {
            out.push((depth, n));
            n.children.iter().for_each(|c| go(c, depth + 1, out));
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    pub fn find(&self, key: &str) -> Option<&ChannelNode> {
        self.walk().into_iter().map(|(_, n)| n).find(|n| n.key == key)
    }

    /// Largest |value - sum(children)| over non-leaf nodes.
    pub fn max_additivity_gap(&self) -> f64 {
        self.walk()
            .into_iter()
            .filter(|(_, n)| !n.children.is_empty())
            .map(|(_, n)| (n.value - n.children.iter().map(|c| c.value).sum::<f64>()).abs())
            .fold(0.0, f64::max)
    }

    fn attributed_sum(&self, which: Attribution) -> f64 {
        if self.children.is_empty() {
            return if self.attribution == Some(which) { self.value } else { 0.0 };
        }
        self.children.iter().map(|c| c.attributed_sum(which)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelDecomposition {
    pub root: ChannelNode,
    pub total: f64,
    /// Sum of sanctions-attributed leaves.
    pub sanctions_total: f64,
    /// Total less the sanctions component.
    pub other_total: f64,
}

/// Builds the channel tree.
///
/// Split leaves are divided at `sanctions_share`. Interior nodes take their
/// stated value when one is supplied (checked against the children within
/// [`ADDITIVITY_TOLERANCE`]) and the children's sum otherwise. The "other"
/// aggregate is the total less the sanctions aggregate, so the two always add
/// to the root.
pub fn channel_decompose(
    inputs: &ChannelInputs,
    schema: &ChannelSchema,
    sanctions_share: f64,
) -> Result<ChannelDecomposition> {
    if !(sanctions_share > 0.0 && sanctions_share < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sanctions share {sanctions_share} is not in (0, 1)"
        )));
    }
    let (leaf_keys, group_keys) = schema.collect_keys();
    let mut unmatched: Vec<String> = inputs
        .leaves
        .keys()
        .filter(|k| !leaf_keys.contains(*k))
        .chain(inputs.stated.keys().filter(|k| !group_keys.contains(*k)))
        .cloned()
        .collect();
    unmatched.extend(
        leaf_keys
            .iter()
            .filter(|k| !inputs.leaves.contains_key(*k))
            .map(|k| format!("{k} (missing)")),
    );
    if !unmatched.is_empty() {
        return Err(Error::Structural(unmatched));
    }

    let root = build_node(&schema.root, inputs, sanctions_share)?;
    let total = root.value;
    let sanctions_total = root.attributed_sum(Attribution::Sanctions);
    Ok(ChannelDecomposition {
        total,
        sanctions_total,
        other_total: total - sanctions_total,
        root,
    })
}

fn build_node(node: &SchemaNode, inputs: &ChannelInputs, share: f64) -> Result<ChannelNode> {
    match node {
        SchemaNode::Leaf { key, label, attribution } => Ok(ChannelNode {
            key: key.clone(),
            name: label.clone(),
            value: inputs.leaves[key],
            attribution: Some(*attribution),
            children: Vec::new(),
        }),
        SchemaNode::SplitLeaf { key, label } => {
            let value = inputs.leaves[key];
            let sanctions = value * share;
            Ok(ChannelNode {
                key: key.clone(),
                name: label.clone(),
                value,
                attribution: None,
                children: vec![
                    ChannelNode {
                        key: format!("{key}_sanctions"),
                        name: "Sanctions effect".into(),
                        value: sanctions,
                        attribution: Some(Attribution::Sanctions),
                        children: Vec::new(),
                    },
                    ChannelNode {
                        key: format!("{key}_other"),
                        name: "Other causes".into(),
                        value: value - sanctions,
                        attribution: Some(Attribution::Other),
                        children: Vec::new(),
                    },
                ],
            })
        }
        SchemaNode::Group { key, label, children } => {
            let children = children
                .iter()
                .map(|c| build_node(c, inputs, share))
                .collect::<Result<Vec<_>>>()?;
            let sum: f64 = children.iter().map(|c| c.value).sum();
            let value = match inputs.stated.get(key) {
                Some(&stated) => {
                    if (stated - sum).abs() > ADDITIVITY_TOLERANCE {
                        return Err(Error::Additivity {
                            node: key.clone(),
                            stated,
                            sum,
                            tolerance: ADDITIVITY_TOLERANCE,
                        });
                    }
                    stated
                }
                None => sum,
            };
            Ok(ChannelNode {
                key: key.clone(),
                name: label.clone(),
                value,
                attribution: None,
                children,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_inputs() -> ChannelInputs {
        let (leaves, _) = ChannelSchema::venezuela_2012_2020().collect_keys();
        ChannelInputs {
            leaves: leaves.into_iter().map(|k| (k, 0.0)).collect(),
            stated: BTreeMap::new(),
        }
    }

    #[test]
    fn all_zero_leaves() {
        let d = channel_decompose(&zero_inputs(), &ChannelSchema::venezuela_2012_2020(), 0.503).unwrap();
        assert!(d.root.walk().iter().all(|(_, n)| n.value == 0.0));
        assert_eq!((d.total, d.sanctions_total, d.other_total), (0.0, 0.0, 0.0));
    }

    #[test]
    fn oil_gdp_split() {
        let mut inputs = zero_inputs();
        inputs.leaves.insert("oil_gdp".into(), -8.1);
        let d = channel_decompose(&inputs, &ChannelSchema::venezuela_2012_2020(), 0.503).unwrap();
        let oil = d.root.find("oil_gdp").unwrap();
        assert!((oil.children[0].value + 4.0743).abs() < 1e-12);
        assert!((oil.children[1].value + 4.0257).abs() < 1e-12);
        assert_eq!(d.total, -8.1);
    }

    #[test]
    fn unknown_and_missing_names_are_listed() {
        let mut inputs = zero_inputs();
        inputs.leaves.remove("tfp_other");
        inputs.leaves.insert("oil_pricee".into(), 1.0);
        let err = channel_decompose(&inputs, &ChannelSchema::venezuela_2012_2020(), 0.5).unwrap_err();
        match err {
            Error::Structural(names) => {
                assert!(names.contains(&"oil_pricee".to_string()));
                assert!(names.contains(&"tfp_other (missing)".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn stated_total_outside_tolerance_is_rejected() {
        let mut inputs = zero_inputs();
        inputs.leaves.insert("tfp_sanctions".into(), -1.0);
        inputs.stated.insert("tfp".into(), -1.2);
        let err = channel_decompose(&inputs, &ChannelSchema::venezuela_2012_2020(), 0.5).unwrap_err();
        assert!(matches!(err, Error::Additivity { .. }));
    }

    #[test]
    fn from_named_routes_groups_to_stated() {
        let schema = ChannelSchema::venezuela_2012_2020();
        let inputs = ChannelInputs::from_named(
            vec![("oil_gdp".to_string(), -1.0), ("total".to_string(), -1.0)],
            &schema,
        )
        .unwrap();
        assert_eq!(inputs.leaves.len(), 1);
        assert_eq!(inputs.stated.len(), 1);
        assert!(matches!(
            ChannelInputs::from_named(vec![("bogus".to_string(), 0.0)], &schema),
            Err(Error::Structural(_))
        ));
    }
}
