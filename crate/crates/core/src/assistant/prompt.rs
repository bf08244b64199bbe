use serde::{Deserialize, Serialize};

use super::AssistantError;
use crate::session_log::sentence_spans;

/// Number of sentences before the cursor that the assistants see.
pub const CONTEXT_SENTENCES: usize = 10;

pub const DATA_PREFIX: &str = "Analyze the following data: ";

pub const SOCRATIC_INSTRUCTION: &str = "Based on the text above, ask four Socratic questions on what has not yet been addressed in the writing. Socratic questions lead to exploring complex ideas, uncovering assumptions,  and analyzing concepts. Examples of Socratic questions include: 'What are the alternative explanations for the trend of increasing gun violence incident counts', 'What are the implications of discrepancy in energy consumption profiles?', or 'What evidence supports the claim of weather conditions contributing to road safety?'. Please ask four questions in the following format: 1. [QUESTION 1] 2. [QUESTION 2] 3. [QUESTION 3] 4. [QUESTION 4]";

pub const AUTOCOMPLETE_INSTRUCTION: &str = "Based on this context, suggest next sentences in the following format: 1. [SENTENCE1] 2. [SENTENCE2] 3. [SENTENCE] 4. [SENTENCE]";

/// Data description of the gun-violence writing task.
pub const GUN_VIOLENCE_DATA: &str = "We have 5 visualizations generated from the data.The first plot is a time series of gun violence incidents over time from Feb 2013 to March 2018. The y-axis is the number of incidents, and the x-axis is the time period. The second plot is a bar chart of gun violence incident counts per state. The y-axis represents the number of incidents, and the x-axis has the states sorted high-to-low in incident counts. The third plot is a stacked bar chart of injured and killed people by each state. The two variables are the number of people injured and the number of people killed. The y-axis is the victim count, and the x-axis has the states sorted in alphabetical order. The fourth plot is a stacked bar chart of victim counts by gender by each state. The two variables are male and female victim counts. The y-axis is the victim count, and the x-axis has the states sorted in alphabetical order. The fifth plot is a stacked bar chart of children and teen victim counts by each state. The two variables are children and teen victim counts. The y-axis is the victim count, and the x-axis has the states sorted in alphabetical order.";

/// Instructions shown to writers, with `{topic}` and `{newspaper}` slots.
pub const WRITING_TASK_TEMPLATE: &str = "You are tasked with writing an article about the issue of {topic} for {newspaper}. A new dataset on this topic has just been released, presented in the form of these five visualizations. You want your reporting to stand out, among the many people who got their hands on the dataset and are writing for other newspapers. Consider, for example, whether you can find a new angle that others might not notice, or write more deeply about an angle. To be clear, your goal is not to cover every piece of information in the dataset, but to make your article as interesting and insightful as possible. You should draw on the AI-generated suggestions for your writing, and you can also use Google if you need any extra information.";

pub fn writing_task(topic: &str, newspaper: &str) -> String {
    WRITING_TASK_TEMPLATE
        .replacen("{topic}", topic, 1)
        .replacen("{newspaper}", newspaper, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuggestionMode {
    Socratic,
    Autocomplete,
}

impl SuggestionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SuggestionMode::Socratic => "socratic",
            SuggestionMode::Autocomplete => "autocomplete",
        }
    }
}

/// Prose description of the data shown to the writer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataDescription {
    prose: String,
}

impl DataDescription {
    pub fn new(prose: impl Into<String>) -> Result<Self, AssistantError> {
        let prose = prose.into();
        if prose.trim().is_empty() {
            return Err(AssistantError::EmptyDataDescription);
        }
        Ok(Self { prose })
    }

    pub fn prose(&self) -> &str {
        &self.prose
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuggestionRequest {
    pub context: String,
    pub mode: SuggestionMode,
}

impl SuggestionRequest {
    /// Request built from the document text before `cursor` (a char offset).
    pub fn at_cursor(document: &str, cursor: usize, mode: SuggestionMode) -> Self {
        Self {
            context: last_k_sentences(document, cursor, CONTEXT_SENTENCES),
            mode,
        }
    }
}

/// The last `k` sentences (the final one possibly partial) of the text
/// before char offset `cursor`, as the original substring from the first
/// kept sentence's start to the last one's end.
pub fn last_k_sentences(document: &str, cursor: usize, k: usize) -> String {
    let end = document
        .char_indices()
        .nth(cursor)
        .map_or(document.len(), |(b, _)| b);
    let before = &document[..end];
    let spans = sentence_spans(before);
    if spans.is_empty() || k == 0 {
        return String::new();
    }
    let first = spans.len().saturating_sub(k);
    before[spans[first].start..spans[spans.len() - 1].end].to_string()
}

fn assemble(data: &DataDescription, context: &str, instruction: &str) -> String {
    let window = last_k_sentences(context, context.chars().count(), CONTEXT_SENTENCES);
    let mut prompt = String::with_capacity(
        DATA_PREFIX.len() + data.prose.len() + window.len() + instruction.len() + 3,
    );
    prompt.push_str(DATA_PREFIX);
    prompt.push_str(&data.prose);
    prompt.push_str("\n\n");
    if !window.is_empty() {
        prompt.push_str(&window);
        prompt.push(' ');
    }
    prompt.push_str(instruction);
    prompt
}

pub fn build_socratic_prompt(
    data: &DataDescription,
    request: &SuggestionRequest,
) -> Result<String, AssistantError> {
    if request.mode != SuggestionMode::Socratic {
        return Err(AssistantError::ModeMismatch {
            expected: SuggestionMode::Socratic,
            found: request.mode,
        });
    }
    Ok(assemble(data, &request.context, SOCRATIC_INSTRUCTION))
}

pub fn build_autocomplete_prompt(
    data: &DataDescription,
    request: &SuggestionRequest,
) -> Result<String, AssistantError> {
    if request.mode != SuggestionMode::Autocomplete {
        return Err(AssistantError::ModeMismatch {
            expected: SuggestionMode::Autocomplete,
            found: request.mode,
        });
    }
    Ok(assemble(data, &request.context, AUTOCOMPLETE_INSTRUCTION))
}

pub fn build_prompt(data: &DataDescription, request: &SuggestionRequest) -> String {
    let instruction = match request.mode {
        SuggestionMode::Socratic => SOCRATIC_INSTRUCTION,
        SuggestionMode::Autocomplete => AUTOCOMPLETE_INSTRUCTION,
    };
    assemble(data, &request.context, instruction)
}

/// Splits an assembled prompt back into its mode and context window.
pub(crate) fn dissect_prompt(prompt: &str) -> Option<(SuggestionMode, &str)> {
    let (mode, head) = if let Some(head) = prompt.strip_suffix(SOCRATIC_INSTRUCTION) {
        (SuggestionMode::Socratic, head)
    } else if let Some(head) = prompt.strip_suffix(AUTOCOMPLETE_INSTRUCTION) {
        (SuggestionMode::Autocomplete, head)
    } else {
        return None;
    };
    let context = head.rsplit_once("\n\n").map_or(head, |(_, c)| c);
    Some((mode, context.trim_end()))
}
