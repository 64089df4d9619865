// API payload shapes (mirrors the service's pydantic response models).

export interface ClientInfo {
  record_id: string;
  client_label: string;
}

export interface EntryEnvelope {
  kind: string;
  data: Record<string, unknown>;
}

export interface Anchor {
  record_id: string;
  entry_id: string;
  kind: string;
  excerpt_hash: string;
}

export interface SummarySection {
  header: string;
  body: string;
  anchors: Anchor[];
}

export interface SummaryResponse {
  level: string;
  text: string;
  body_with_anchors: string;
  sections: SummarySection[];
  anchors: Anchor[];
  generated_at: string;
  attempts: number;
}

export interface MatchedRule {
  dimension: string;
  value: string;
  keyword: string;
}

export interface Routing {
  category: string;
  scope: string;
  matched_rules: MatchedRule[];
}

export interface ChatResponse {
  insufficient: boolean;
  category: string;
  scope: string;
  routing: Routing;
  text: string;
  body_with_anchors: string;
  raw_data_block: string[] | null;
  bullets: string[];
  anchors: Anchor[];
  generated_at: string;
  attempts: number;
}

export interface ResolveResponse {
  record_id: string;
  entry_id: string;
  kind: string;
  stale: boolean;
  excerpt_hash: string;
  entry: EntryEnvelope;
}

export interface CompletionSeries {
  window: [string, string];
  per_day: Record<string, number>;
  per_week: Record<string, number>;
  per_type: Record<string, number>;
  longest_streak: number;
  current_streak: number;
  gaps: [string, string][];
}

export interface MoodPoint {
  submitted_at: string;
  homework_type: string;
  mood_before: number;
  mood_after: number;
  delta: number;
}

export interface MetricStats {
  mean: number;
  min: number;
  max: number;
}

export interface Biometrics {
  window: [string, string];
  day_count: number;
  stats: Record<string, MetricStats>;
  text_block: string;
}

export interface ItemSeverity {
  text: string;
  score: number;
  threshold: number | null;
  exceeded: boolean;
  color_hint: string;
}

export interface AssessmentSeverity {
  entry_id: string;
  instrument: string;
  administered_at: string;
  items: ItemSeverity[];
  total: number;
  total_threshold: number | null;
  total_band: string;
  total_color_hint: string;
}

export interface Reading {
  finished: string[];
  not_finished: string[];
}

// The onboarding configuration document, as the API stores it.
export interface OnboardingConfig {
  focus_areas: string[];
  focus_other_labels: string[];
  homework_types: string[];
  assessments: string[];
  assessment_other_labels: string[];
  summary_level: string;
  summary_priorities: string[];
  homework_summary: string;
  aiChatAbilities: string[];
  clinical_info_display: string[];
  side_functions: string[];
  expected_cadence: Record<string, number>;
}

export interface ConfigResponse {
  version: number;
  config: OnboardingConfig;
}

export interface WidgetInfo {
  widget_id: string;
  kind: string;
  requirement: string;
}

export interface LayoutWidget {
  widget_id: string;
  kind: string;
  clinician_visible: boolean;
  session_visible: boolean;
}

export interface LayoutResponse {
  widgets: LayoutWidget[];
}

export interface DisplayModeResponse {
  mode: string;
  overrides: Record<string, boolean>;
  visible: LayoutWidget[];
}

export interface ApiError {
  code: string;
  message: string;
  path?: string | null;
}

export function emptyConfig(): OnboardingConfig {
  return {
    focus_areas: [],
    focus_other_labels: [],
    homework_types: [],
    assessments: [],
    assessment_other_labels: [],
    summary_level: "Basic Overview",
    summary_priorities: [],
    homework_summary: "weekly",
    aiChatAbilities: [],
    clinical_info_display: [],
    side_functions: [],
    expected_cadence: {},
  };
}
