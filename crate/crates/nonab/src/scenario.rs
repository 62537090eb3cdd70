//! Scenario files: named groups, subgroups, actions, kernels and
//! extensions in JSON, plus a task list with optional expected values.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::abelian::{self, GModule};
use crate::action::{induce_g_group, GAction};
use crate::cohomology::{h1_classes, shapiro1_forward, shapiro1_inverse, Cocycle1};
use crate::extension::{
    anabelian_extension_from_kernel, extensions_with_kernel, induce_extension, obstruction_delta,
    sections_of_extension, transport_sections, Extension, FactorSystem, OuterKernel,
};
use crate::group::{FiniteGroup, GroupMap, MapKind, Subgroup};
use crate::report::{CheckResult, ScenarioReport};
use crate::{Error, Limits, Result};

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDesc {
    Named {
        name: String,
    },
    Table {
        table: Vec<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDesc {
    pub group: String,
    #[serde(default)]
    pub members: Option<Vec<usize>>,
    #[serde(default)]
    pub generators: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDesc {
    pub actor: String,
    pub space: String,
    pub images: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDesc {
    pub source: String,
    pub space: String,
    /// One automorphism per source element; omitted means trivial.
    #[serde(default)]
    pub reps: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ExtensionDesc {
    FactorSet {
        kernel: String,
        quotient: String,
        u: Vec<Vec<usize>>,
        m: Vec<Vec<usize>>,
    },
    Realized {
        total: String,
        kernel: String,
        quotient: String,
        inject: Vec<usize>,
        project: Vec<usize>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    H1 {
        action: String,
        #[serde(default)]
        expect_cocycles: Option<usize>,
        #[serde(default)]
        expect_classes: Option<usize>,
    },
    Shapiro1 {
        subgroup: String,
        action: String,
        #[serde(default)]
        expect_classes: Option<usize>,
    },
    Sections {
        extension: String,
        #[serde(default)]
        expect_classes: Option<usize>,
    },
    ExtensionClasses {
        kernel: String,
        #[serde(default)]
        expect_classes: Option<usize>,
        #[serde(default)]
        expect_h2_order: Option<usize>,
        #[serde(default)]
        check_free_action: bool,
    },
    Obstruction {
        kernel: String,
        #[serde(default)]
        expect_zero: Option<bool>,
    },
    InduceTransport {
        extension: String,
        subgroup: String,
        #[serde(default)]
        expect_classes: Option<usize>,
    },
    Anabelian {
        kernel: String,
        #[serde(default)]
        expect_classes: Option<usize>,
    },
    AbelianH {
        action: String,
        degree: usize,
        #[serde(default)]
        expect_order: Option<usize>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDesc>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, SubgroupDesc>,
    #[serde(default)]
    pub actions: BTreeMap<String, ActionDesc>,
    #[serde(default)]
    pub kernels: BTreeMap<String, KernelDesc>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionDesc>,
    pub tasks: Vec<Task>,
}

pub struct Scenario {
    pub name: String,
    subgroups: BTreeMap<String, Subgroup>,
    actions: BTreeMap<String, GAction>,
    kernels: BTreeMap<String, OuterKernel>,
    extensions: BTreeMap<String, Extension>,
    tasks: Vec<Task>,
}

fn parse_err(msg: String) -> Error {
    Error::Parse(msg)
}

impl Scenario {
    pub fn parse(text: &str, limits: &Limits) -> Result<Scenario> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| parse_err(format!("scenario JSON: {e}")))?;
        Scenario::resolve(file, limits)
    }

    fn resolve(file: ScenarioFile, limits: &Limits) -> Result<Scenario> {
        let mut groups: BTreeMap<String, Arc<FiniteGroup>> = BTreeMap::new();
        for (name, desc) in file.groups {
            let g = match desc {
                GroupDesc::Named { name: n } => FiniteGroup::named(&n, limits),
                GroupDesc::Table { table } => FiniteGroup::from_table(table, limits),
                GroupDesc::Perm { degree, generators } => {
                    FiniteGroup::from_permutations(degree, &generators, limits)
                }
            };
            let g = match g {
                Ok(g) => g,
                Err(Error::BoundExceeded(m)) => return Err(Error::BoundExceeded(m)),
                Err(e) => return Err(parse_err(format!("group {name:?}: {e}"))),
            };
            groups.insert(name, Arc::new(g));
        }
        let lookup = |groups: &BTreeMap<String, Arc<FiniteGroup>>,
                      subgroups: &BTreeMap<String, Subgroup>,
                      name: &str|
         -> Result<Arc<FiniteGroup>> {
            if let Some(g) = groups.get(name) {
                return Ok(Arc::clone(g));
            }
            if let Some(s) = subgroups.get(name) {
                return Ok(Arc::clone(&s.group));
            }
            Err(parse_err(format!("unresolved group reference {name:?}")))
        };
        let mut subgroups: BTreeMap<String, Subgroup> = BTreeMap::new();
        for (name, desc) in file.subgroups {
            let ambient = groups.get(&desc.group).ok_or_else(|| {
                parse_err(format!(
                    "subgroup {name:?}: unresolved group {:?}",
                    desc.group
                ))
            })?;
            let sub = match (desc.members, desc.generators) {
                (Some(m), None) => Subgroup::new(Arc::clone(ambient), m),
                (None, Some(g)) => Subgroup::from_generators(Arc::clone(ambient), &g),
                _ => {
                    return Err(parse_err(format!(
                        "subgroup {name:?}: give exactly one of members or generators"
                    )))
                }
            }
            .map_err(|e| parse_err(format!("subgroup {name:?}: {e}")))?;
            subgroups.insert(name, sub);
        }
        let mut actions: BTreeMap<String, GAction> = BTreeMap::new();
        for (name, desc) in file.actions {
            let actor = lookup(&groups, &subgroups, &desc.actor)?;
            let space = lookup(&groups, &subgroups, &desc.space)?;
            let act = GAction::new(actor, space, desc.images)
                .map_err(|e| parse_err(format!("action {name:?}: {e}")))?;
            actions.insert(name, act);
        }
        let mut kernels: BTreeMap<String, OuterKernel> = BTreeMap::new();
        for (name, desc) in file.kernels {
            let source = lookup(&groups, &subgroups, &desc.source)?;
            let space = lookup(&groups, &subgroups, &desc.space)?;
            let reps = desc
                .reps
                .unwrap_or_else(|| vec![space.elements().collect(); source.order()]);
            let k = OuterKernel::new(source, space, reps)
                .map_err(|e| parse_err(format!("kernel {name:?}: {e}")))?;
            kernels.insert(name, k);
        }
        let mut extensions: BTreeMap<String, Extension> = BTreeMap::new();
        for (name, desc) in file.extensions {
            let ext = match desc {
                ExtensionDesc::FactorSet {
                    kernel,
                    quotient,
                    u,
                    m,
                } => {
                    let k = lookup(&groups, &subgroups, &kernel)?;
                    let q = lookup(&groups, &subgroups, &quotient)?;
                    FactorSystem::new(k, q, u, m).and_then(|fs| fs.to_extension(limits))
                }
                ExtensionDesc::Realized {
                    total,
                    kernel,
                    quotient,
                    inject,
                    project,
                } => {
                    let t = lookup(&groups, &subgroups, &total)?;
                    let k = lookup(&groups, &subgroups, &kernel)?;
                    let q = lookup(&groups, &subgroups, &quotient)?;
                    GroupMap::new(
                        Arc::clone(&k),
                        Arc::clone(&t),
                        inject,
                        MapKind::Homomorphism,
                    )
                    .and_then(|i| {
                        let p = GroupMap::new(
                            Arc::clone(&t),
                            Arc::clone(&q),
                            project,
                            MapKind::Homomorphism,
                        )?;
                        Extension::new(t, k, q, i, p)
                    })
                }
            };
            let ext = match ext {
                Ok(e) => e,
                Err(Error::BoundExceeded(m)) => return Err(Error::BoundExceeded(m)),
                Err(e) => return Err(parse_err(format!("extension {name:?}: {e}"))),
            };
            extensions.insert(name, ext);
        }
        Ok(Scenario {
            name: file.name,
            subgroups,
            actions,
            kernels,
            extensions,
            tasks: file.tasks,
        })
    }

    fn action(&self, name: &str) -> Result<&GAction> {
        self.actions
            .get(name)
            .ok_or_else(|| parse_err(format!("unresolved action reference {name:?}")))
    }

    fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups
            .get(name)
            .ok_or_else(|| parse_err(format!("unresolved subgroup reference {name:?}")))
    }

    fn kernel(&self, name: &str) -> Result<&OuterKernel> {
        self.kernels
            .get(name)
            .ok_or_else(|| parse_err(format!("unresolved kernel reference {name:?}")))
    }

    fn extension(&self, name: &str) -> Result<&Extension> {
        self.extensions
            .get(name)
            .ok_or_else(|| parse_err(format!("unresolved extension reference {name:?}")))
    }

    /// Execute tasks in declared order. Reference and bound errors abort;
    /// expectation mismatches are recorded as failing checks.
    pub fn run(&self, limits: &Limits) -> Result<ScenarioReport> {
        let mut rep = ScenarioReport::new(self.name.clone());
        for (i, task) in self.tasks.iter().enumerate() {
            let label = format!("task {}", i + 1);
            let check = self.run_task(task, &label, limits)?;
            for c in check {
                rep.push(c);
            }
        }
        Ok(rep)
    }

    fn run_task(&self, task: &Task, label: &str, limits: &Limits) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        match task {
            Task::H1 {
                action,
                expect_cocycles,
                expect_classes,
            } => {
                let act = self.action(action)?;
                let h1 = h1_classes(act, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} h1 cocycles"),
                    h1.cocycles.len(),
                    *expect_cocycles,
                ));
                out.push(CheckResult::expect_eq(
                    format!("{label} h1 classes"),
                    h1.classes.len(),
                    *expect_classes,
                ));
            }
            Task::Shapiro1 {
                subgroup,
                action,
                expect_classes,
            } => {
                let sub = self.subgroup(subgroup)?;
                let act = self.action(action)?;
                let (classes, detail) = shapiro1_check(sub, act, limits)?;
                out.push(match detail {
                    None => CheckResult::expect_eq(
                        format!("{label} shapiro1 classes"),
                        classes,
                        *expect_classes,
                    ),
                    Some(err) => CheckResult::fail(format!("{label} shapiro1"), err),
                });
            }
            Task::Sections {
                extension,
                expect_classes,
            } => {
                let e = self.extension(extension)?;
                let secs = sections_of_extension(e, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} section classes"),
                    secs.classes.len(),
                    *expect_classes,
                ));
            }
            Task::ExtensionClasses {
                kernel,
                expect_classes,
                expect_h2_order,
                check_free_action,
            } => {
                let rho = self.kernel(kernel)?;
                let set = extensions_with_kernel(rho, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} extension classes"),
                    set.iso_classes.len(),
                    *expect_classes,
                ));
                out.push(CheckResult::expect_eq(
                    format!("{label} h2 order"),
                    set.h2.order as usize,
                    *expect_h2_order,
                ));
                if *check_free_action {
                    out.push(match crate::suites::h2_action_is_free(&set, limits) {
                        Ok(true) => {
                            CheckResult::pass(format!("{label} free h2 action"), "free".to_string())
                        }
                        Ok(false) => CheckResult::fail(
                            format!("{label} free h2 action"),
                            "a nonzero class fixed an extension".to_string(),
                        ),
                        Err(e) => return Err(e),
                    });
                }
            }
            Task::Obstruction {
                kernel,
                expect_zero,
            } => {
                let rho = self.kernel(kernel)?;
                let obs = obstruction_delta(rho, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} obstruction zero"),
                    obs.is_zero(),
                    *expect_zero,
                ));
            }
            Task::InduceTransport {
                extension,
                subgroup,
                expect_classes,
            } => {
                let f = self.extension(extension)?;
                let h = self.subgroup(subgroup)?;
                let ind = induce_extension(f, h, limits)?;
                let tr = transport_sections(f, &ind, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} transported section classes"),
                    tr.f_classes.classes.len(),
                    *expect_classes,
                ));
            }
            Task::Anabelian {
                kernel,
                expect_classes,
            } => {
                let rho = self.kernel(kernel)?;
                let data = anabelian_extension_from_kernel(rho, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} anabelian section classes"),
                    data.sections.classes.len(),
                    *expect_classes,
                ));
            }
            Task::AbelianH {
                action,
                degree,
                expect_order,
            } => {
                let act = self.action(action)?;
                let module = GModule::new(act.clone())?;
                let h = abelian::cohomology(&module, *degree, limits)?;
                out.push(CheckResult::expect_eq(
                    format!("{label} h{degree} order"),
                    h.order as usize,
                    *expect_order,
                ));
            }
        }
        Ok(out)
    }
}

/// Run the degree-1 induction consistency check for a subgroup and an
/// action of that subgroup. Returns the common class count, or an error
/// description if the maps fail to invert.
pub fn shapiro1_check(
    sub: &Subgroup,
    base: &GAction,
    limits: &Limits,
) -> Result<(usize, Option<String>)> {
    if base.actor != sub.group {
        return Err(Error::Mismatch("action actor is not the subgroup".into()));
    }
    let ind = induce_g_group(sub, base, limits)?;
    let top = h1_classes(&ind.action, limits)?;
    let bottom = h1_classes(&ind.base, limits)?;
    if top.classes.len() != bottom.classes.len() {
        return Ok((
            bottom.classes.len(),
            Some(format!(
                "class counts differ: {} induced vs {} base",
                top.classes.len(),
                bottom.classes.len()
            )),
        ));
    }
    let mut seen = vec![false; bottom.classes.len()];
    for rep in &top.classes {
        let b = Cocycle1::new(ind.action.clone(), rep.clone())?;
        let a = shapiro1_forward(&ind, &b)?;
        let down = bottom.class_of[&a.values];
        if seen[down] {
            return Ok((
                bottom.classes.len(),
                Some("restriction is not injective".into()),
            ));
        }
        seen[down] = true;
    }
    for rep in &bottom.classes {
        let a = Cocycle1::new(ind.base.clone(), rep.clone())?;
        let b = shapiro1_inverse(&ind, &a)?;
        let back = shapiro1_forward(&ind, &b)?;
        if back.values != a.values {
            return Ok((
                bottom.classes.len(),
                Some("inverse is not a section of restriction".into()),
            ));
        }
    }
    Ok((bottom.classes.len(), None))
}

/// Exit code classification for scenario/suite runs.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 2,
        Error::BoundExceeded(_) => 3,
        _ => 1,
    }
}
