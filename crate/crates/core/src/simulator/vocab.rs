use serde::{Deserialize, Serialize};

/// Content words of one writing topic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicBank {
    pub name: String,
    pub words: Vec<String>,
}

impl TopicBank {
    pub fn new(name: &str, words: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            words: words.iter().map(|w| w.to_string()).collect(),
        }
    }
}

/// Words shared by every topic, mixed into generated sentences.
pub const FUNCTION_WORDS: &[&str] = &[
    "the", "of", "and", "in", "to", "a", "is", "for", "on", "with", "as", "by", "that", "more",
];

const CLIMATE: &[&str] = &[
    "climate",
    "carbon",
    "emissions",
    "warming",
    "glaciers",
    "drought",
    "ocean",
    "heat",
    "methane",
    "renewable",
    "solar",
    "wind",
    "temperature",
    "rainfall",
    "flooding",
    "wildfire",
    "ice",
    "sea",
    "levels",
    "coastal",
    "atmosphere",
    "greenhouse",
    "forests",
    "species",
    "adaptation",
    "mitigation",
    "fossil",
    "fuels",
    "energy",
    "consumption",
    "heatwaves",
    "storms",
    "agriculture",
    "crops",
    "water",
    "scarcity",
    "pollution",
    "arctic",
    "permafrost",
    "biodiversity",
];

const GUN_VIOLENCE: &[&str] = &[
    "gun",
    "violence",
    "incidents",
    "firearms",
    "shootings",
    "victims",
    "injured",
    "killed",
    "states",
    "teen",
    "children",
    "police",
    "legislation",
    "background",
    "checks",
    "homicide",
    "suicide",
    "handguns",
    "rifles",
    "permits",
    "ownership",
    "trauma",
    "hospitals",
    "neighborhoods",
    "prevention",
    "gender",
    "male",
    "female",
    "counts",
    "trend",
    "rates",
    "enforcement",
    "courts",
    "sentencing",
    "schools",
    "safety",
    "community",
    "outreach",
    "registry",
    "ammunition",
];

const CITY_PLANNING: &[&str] = &[
    "zoning",
    "housing",
    "transit",
    "buses",
    "subway",
    "density",
    "parks",
    "sidewalks",
    "bicycles",
    "lanes",
    "traffic",
    "congestion",
    "parking",
    "suburbs",
    "downtown",
    "rents",
    "developers",
    "councils",
    "ordinances",
    "infrastructure",
    "bridges",
    "roads",
    "streetcars",
    "pedestrians",
    "commuters",
    "neighborhood",
    "gentrification",
    "affordability",
    "towers",
    "plazas",
    "stations",
    "corridors",
    "walkability",
    "sprawl",
    "districts",
    "blocks",
    "intersections",
    "signals",
    "ridership",
    "fares",
];

const PUBLIC_HEALTH: &[&str] = &[
    "vaccines",
    "clinics",
    "patients",
    "doctors",
    "nurses",
    "insurance",
    "disease",
    "infection",
    "outbreak",
    "epidemic",
    "diabetes",
    "obesity",
    "nutrition",
    "exercise",
    "screening",
    "diagnosis",
    "treatment",
    "medicine",
    "pharmacy",
    "prescriptions",
    "mortality",
    "lifespan",
    "sanitation",
    "hygiene",
    "antibiotics",
    "resistance",
    "wellness",
    "therapy",
    "counseling",
    "addiction",
    "opioids",
    "overdose",
    "elderly",
    "infants",
    "maternal",
    "prenatal",
    "surgery",
    "emergency",
    "ambulance",
    "telehealth",
];

const EDUCATION: &[&str] = &[
    "students",
    "teachers",
    "classrooms",
    "curriculum",
    "tuition",
    "scholarships",
    "exams",
    "grades",
    "literacy",
    "numeracy",
    "tutoring",
    "lectures",
    "homework",
    "universities",
    "colleges",
    "kindergarten",
    "principals",
    "funding",
    "enrollment",
    "graduation",
    "dropout",
    "attendance",
    "textbooks",
    "libraries",
    "laptops",
    "seminars",
    "degrees",
    "apprenticeships",
    "mentors",
    "assessment",
    "pedagogy",
    "recess",
    "cafeteria",
    "semester",
    "faculty",
    "campus",
    "admissions",
    "diplomas",
    "vocabulary",
    "reading",
];

const ENERGY_MARKETS: &[&str] = &[
    "electricity",
    "grid",
    "utilities",
    "prices",
    "tariffs",
    "pipelines",
    "refineries",
    "petroleum",
    "gasoline",
    "diesel",
    "nuclear",
    "reactors",
    "turbines",
    "batteries",
    "storage",
    "meters",
    "blackouts",
    "demand",
    "supply",
    "exports",
    "imports",
    "subsidies",
    "markets",
    "traders",
    "futures",
    "contracts",
    "kilowatt",
    "megawatt",
    "transmission",
    "substations",
    "generators",
    "hydropower",
    "dams",
    "geothermal",
    "hydrogen",
    "efficiency",
    "insulation",
    "thermostats",
    "households",
    "bills",
];

/// The built-in topic banks, all pairwise disjoint.
pub fn default_topic_banks() -> Vec<TopicBank> {
    vec![
        TopicBank::new("climate", CLIMATE),
        TopicBank::new("gun_violence", GUN_VIOLENCE),
        TopicBank::new("city_planning", CITY_PLANNING),
        TopicBank::new("public_health", PUBLIC_HEALTH),
        TopicBank::new("education", EDUCATION),
        TopicBank::new("energy_markets", ENERGY_MARKETS),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn banks_are_disjoint_lowercase_words() {
        let banks = default_topic_banks();
        let mut seen = HashSet::new();
        for b in &banks {
            assert!(b.words.len() >= 40, "{}", b.name);
            for w in &b.words {
                assert!(w.chars().all(|c| c.is_ascii_lowercase()), "{w}");
                assert!(!FUNCTION_WORDS.contains(&w.as_str()), "{w}");
                assert!(seen.insert(w.clone()), "{w} appears twice");
            }
        }
    }
}
