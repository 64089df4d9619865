// Typed client for the service API. The auth token lives in session memory
// only; all clinical data reads are server-authoritative.

import type {
  AssessmentSeverity,
  Biometrics,
  ChatResponse,
  ClientInfo,
  CompletionSeries,
  ConfigResponse,
  DisplayModeResponse,
  EntryEnvelope,
  LayoutResponse,
  MoodPoint,
  OnboardingConfig,
  Reading,
  ResolveResponse,
  Routing,
  SummaryResponse,
  WidgetInfo,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly path?: string | null,
  ) {
    super(message);
  }
}

export class Api {
  constructor(
    private readonly base: string = "",
    private token: string | null = null,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const err = payload as { code?: string; message?: string; path?: string };
      throw new ApiRequestError(
        response.status,
        err.code ?? "HTTPError",
        err.message ?? `HTTP ${response.status}`,
        err.path,
      );
    }
    return payload as T;
  }

  listClients(): Promise<ClientInfo[]> {
    return this.request("GET", "/clients");
  }

  getConfig(): Promise<ConfigResponse> {
    return this.request("GET", "/therapist/config");
  }

  putConfig(config: OnboardingConfig): Promise<ConfigResponse> {
    return this.request("PUT", "/therapist/config", config);
  }

  recommendWidgets(): Promise<WidgetInfo[]> {
    return this.request("GET", "/widgets/recommend");
  }

  getLayout(clientId: string): Promise<LayoutResponse> {
    return this.request("GET", `/clients/${clientId}/layout`);
  }

  putLayout(clientId: string, chosen: string[]): Promise<LayoutResponse> {
    return this.request("PUT", `/clients/${clientId}/layout`, { chosen });
  }

  putDisplayMode(
    clientId: string,
    mode: string,
    overrides: Record<string, boolean>,
  ): Promise<DisplayModeResponse> {
    return this.request("PUT", `/clients/${clientId}/display-mode`, { mode, overrides });
  }

  generateSummary(clientId: string, asOf?: string): Promise<SummaryResponse> {
    return this.request("POST", `/clients/${clientId}/summary`, {
      activate: true,
      ...(asOf ? { as_of: asOf } : {}),
    });
  }

  chat(clientId: string, question: string, asOf?: string): Promise<ChatResponse> {
    return this.request("POST", `/clients/${clientId}/chat`, {
      question,
      ...(asOf ? { as_of: asOf } : {}),
    });
  }

  routing(clientId: string, question: string): Promise<Routing> {
    return this.request(
      "GET",
      `/clients/${clientId}/chat/routing?q=${encodeURIComponent(question)}`,
    );
  }

  entries(clientId: string, kinds?: string): Promise<EntryEnvelope[]> {
    const query = kinds ? `?kinds=${encodeURIComponent(kinds)}` : "";
    return this.request("GET", `/clients/${clientId}/entries${query}`);
  }

  completion(clientId: string): Promise<CompletionSeries> {
    return this.request("GET", `/clients/${clientId}/analytics/completion`);
  }

  mood(clientId: string): Promise<MoodPoint[]> {
    return this.request("GET", `/clients/${clientId}/analytics/mood`);
  }

  biometrics(clientId: string): Promise<Biometrics> {
    return this.request("GET", `/clients/${clientId}/analytics/biometrics`);
  }

  assessments(clientId: string): Promise<AssessmentSeverity[]> {
    return this.request("GET", `/clients/${clientId}/analytics/assessments`);
  }

  reading(clientId: string): Promise<Reading> {
    return this.request("GET", `/clients/${clientId}/analytics/reading`);
  }

  resolveAnchor(recordId: string, entryId: string, hash?: string): Promise<ResolveResponse> {
    const query = hash ? `?hash=${encodeURIComponent(hash)}` : "";
    return this.request("GET", `/anchors/${recordId}/${entryId}${query}`);
  }

  messages(clientId: string): Promise<EntryEnvelope[]> {
    return this.request("GET", `/clients/${clientId}/messages`);
  }

  postMessage(clientId: string, text: string): Promise<{ entry_id: string }> {
    return this.request("POST", `/clients/${clientId}/messages`, { text });
  }

  goals(clientId: string): Promise<EntryEnvelope[]> {
    return this.request("GET", `/clients/${clientId}/goals`);
  }

  putGoal(
    clientId: string,
    goal: { goal_id?: string; text?: string; status?: string },
  ): Promise<{ entry_id: string }> {
    return this.request("PUT", `/clients/${clientId}/goals`, goal);
  }
}
