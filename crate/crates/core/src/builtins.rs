//! Named example algebras.

use std::collections::BTreeMap;

use crate::file::AlgebraFile;

type Builder = Box<dyn Fn() -> AlgebraFile + Send + Sync>;

pub struct ExampleRegistry {
    entries: BTreeMap<String, Builder>,
}

impl ExampleRegistry {
    pub fn empty() -> Self {
        ExampleRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn with_defaults() -> Self {
        let mut registry = Self::empty();
        for n in 2..=6 {
            registry.register(&format!("torus-{n}"), move || torus(n));
        }
        registry.register("heis3", heis3);
        registry.register("kt", kt);
        registry.register("paper-gamma", paper_gamma);
        registry.register("iwasawa", iwasawa);
        registry.register("h-twisted", h_twisted);
        registry.register("h-product", h_product);
        registry
    }

    pub fn register<F>(&mut self, name: &str, build: F)
    where
        F: Fn() -> AlgebraFile + Send + Sync + 'static,
    {
        self.entries.insert(name.to_string(), Box::new(build));
    }

    pub fn get(&self, name: &str) -> Option<AlgebraFile> {
        self.entries.get(name).map(|build| build())
    }

    /// Names in lexicographic order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

impl Default for ExampleRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

pub fn get(name: &str) -> Option<AlgebraFile> {
    ExampleRegistry::with_defaults().get(name)
}

pub fn names() -> Vec<String> {
    ExampleRegistry::with_defaults()
        .names()
        .into_iter()
        .map(String::from)
        .collect()
}

pub fn torus(n: usize) -> AlgebraFile {
    let generators: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    AlgebraFile::new(&format!("torus-{n}"), &generators)
        .with_hull_datum()
        .with_note("description", &format!("abelian Lie algebra of dimension {n}"))
}

pub fn heis3() -> AlgebraFile {
    AlgebraFile::new("heis3", &["x", "y", "z"])
        .with_differential("z", &[(-1, "x", "y")])
        .with_hull_datum()
        .with_note("description", "3-dimensional Heisenberg algebra, [X, Y] = Z")
}

pub fn kt() -> AlgebraFile {
    AlgebraFile::new("kt", &["alpha", "beta", "gamma", "delta"])
        .with_differential("gamma", &[(-1, "alpha", "beta")])
        .with_hull_datum()
        .with_note("description", "heis3 + R, the Lie algebra of U3(R) x R")
}

pub fn paper_gamma() -> AlgebraFile {
    let mut file = kt()
        .with_action(&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        .with_note(
            "description",
            "heis3 + R with the finite reductive part acting by diag(-1, -1, 1, 1)",
        )
        .with_note("group", "finite extension of a lattice of U3(R) x R");
    file.name = "paper-gamma".to_string();
    file
}

pub fn iwasawa() -> AlgebraFile {
    AlgebraFile::new("iwasawa", &["zeta1", "zeta2", "eta1", "eta2", "theta1", "theta2"])
        .with_differential("theta1", &[(-1, "zeta1", "eta1"), (1, "zeta2", "eta2")])
        .with_differential("theta2", &[(-1, "zeta1", "eta2"), (-1, "zeta2", "eta1")])
        .with_hull_datum()
        .with_note(
            "description",
            "complex Heisenberg algebra u3(C) as a real 6-dimensional algebra",
        )
}

const H_GENERATORS: [&str; 8] = ["sigma", "tau", "zeta1", "zeta2", "eta1", "eta2", "theta1", "theta2"];

/// Extension of the complex Heisenberg algebra by a rotation: `tau` turns
/// the `zeta` plane and the `eta` plane in opposite directions, so that the
/// product `zeta·eta` feeding `theta` stays fixed.
pub fn h_twisted() -> AlgebraFile {
    AlgebraFile::new("h-twisted", &H_GENERATORS)
        .with_differential("zeta1", &[(1, "tau", "zeta2")])
        .with_differential("zeta2", &[(-1, "tau", "zeta1")])
        .with_differential("eta1", &[(-1, "tau", "eta2")])
        .with_differential("eta2", &[(1, "tau", "eta1")])
        .with_differential("theta1", &[(-1, "zeta1", "eta1"), (1, "zeta2", "eta2")])
        .with_differential("theta2", &[(-1, "zeta1", "eta2"), (-1, "zeta2", "eta1")])
        .with_note(
            "description",
            "8-dimensional solvable algebra (R x R) x u3(C) where tau rotates zeta and eta",
        )
        .with_note(
            "sign_convention",
            "the eta twist runs opposite to the zeta twist; with equal directions d^2 != 0",
        )
        .with_note(
            "group",
            "H = G x R with G = R x U3(C), the first factor acting on U3(C) by rotation",
        )
}

pub fn h_product() -> AlgebraFile {
    AlgebraFile::new("h-product", &H_GENERATORS)
        .with_differential("theta1", &[(-1, "zeta1", "eta1"), (1, "zeta2", "eta2")])
        .with_differential("theta2", &[(-1, "zeta1", "eta2"), (-1, "zeta2", "eta1")])
        .with_hull_datum()
        .with_note("description", "R^2 + u3(C), the Lie algebra of R^2 x U3(C)")
        .with_note(
            "group",
            "the lattice 2Z x U3(Z + iZ) x Z of the twisted group also sits in R^2 x U3(C); the quotient is a 2-torus times an Iwasawa manifold",
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contents() {
        let names = names();
        assert_eq!(names.len(), 11);
        for expected in [
            "torus-2",
            "torus-6",
            "heis3",
            "kt",
            "paper-gamma",
            "iwasawa",
            "h-twisted",
            "h-product",
        ] {
            assert!(names.iter().any(|n| n == expected), "{expected}");
        }
        for name in &names {
            let file = get(name).unwrap();
            assert_eq!(&file.name, name);
            file.validate_structure().unwrap();
        }
        assert!(get("torus-7").is_none());
    }

    #[test]
    fn gamma_example_presentation() {
        let file = paper_gamma();
        assert_eq!(file.generators, ["alpha", "beta", "gamma", "delta"]);
        assert_eq!(file.action_generators.len(), 1);
        let basis = file.basis().unwrap();
        assert_eq!(file.dual_differentials(&basis).unwrap()[&2].to_string(), "-alpha^beta");
    }

    #[test]
    fn every_example_is_a_lie_algebra() {
        for name in names() {
            get(&name).unwrap().algebra().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn same_direction_rotation_is_not_a_lie_algebra() {
        let mut file = h_twisted();
        file = file
            .with_differential("eta1", &[(1, "tau", "eta2")])
            .with_differential("eta2", &[(-1, "tau", "eta1")]);
        assert!(matches!(
            file.algebra(),
            Err(crate::Error::NotALieAlgebra { generator }) if generator.starts_with("theta")
        ));
    }

    #[test]
    fn custom_registration() {
        let mut registry = ExampleRegistry::empty();
        registry.register("mine", || torus(2));
        assert_eq!(registry.names(), vec!["mine"]);
        assert_eq!(registry.get("mine").unwrap().generators.len(), 2);
    }
}
