// Typeahead demo over the suggestion service.
//
// Keystrokes are debounced, then turned into GET /suggest requests. Each
// request carries a monotonically increasing sequence number; a response is
// painted only if no newer request has been issued, so an out-of-order reply
// for an older query can never overwrite fresher results.

export interface Suggestion {
  phrase: string;
  weight: number;
}

export interface SuggestResponse {
  query: string;
  count: number;
  suggestions: Suggestion[];
}

export interface DemoState {
  /** Current text of the search box. */
  input: string;
  /** Sequence number of the newest issued request, null when idle. */
  inFlight: number | null;
  /** Last list that was painted, in service order. */
  rendered: Suggestion[];
  baseUrl: string;
  debounceMs: number;
}

// Structural subset of fetch, enough to swap in a scripted fake under test.
export type FetchLike = (
  url: string,
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export interface TypeaheadOptions {
  /** Element the suggestion rows are written into (typically a <ul>). */
  list: HTMLElement;
  /** Element for the non-blocking failure notice. */
  notice: HTMLElement;
  baseUrl?: string;
  debounceMs?: number;
  fetchFn?: FetchLike;
}

export const DEFAULT_BASE_URL = "http://127.0.0.1:8080";
export const DEFAULT_DEBOUNCE_MS = 100;
export const SUGGESTION_COUNT = 10;

/** Base URL from a ?service=... query parameter, falling back to the constant. */
export function resolveBaseUrl(search: string, fallback = DEFAULT_BASE_URL): string {
  const value = new URLSearchParams(search).get("service");
  return value ? value : fallback;
}

export class TypeaheadDemo {
  readonly state: DemoState;

  private readonly list: HTMLElement;
  private readonly notice: HTMLElement;
  private readonly fetchFn: FetchLike;
  private timer: ReturnType<typeof setTimeout> | null = null;
  // Monotone request counter; `painted` is the newest sequence whose
  // response made it to the screen.
  private seq = 0;
  private painted = 0;

  constructor(opts: TypeaheadOptions) {
    this.list = opts.list;
    this.notice = opts.notice;
    this.fetchFn = opts.fetchFn ?? ((url) => globalThis.fetch(url));
    this.state = {
      input: "",
      inFlight: null,
      rendered: [],
      baseUrl: opts.baseUrl ?? DEFAULT_BASE_URL,
      debounceMs: opts.debounceMs ?? DEFAULT_DEBOUNCE_MS,
    };
  }

  /** Feed the current contents of the search box. Safe to call per keypress. */
  onKeystroke(text: string): void {
    this.state.input = text;
    // Rescheduling on every call is what keeps at most one request pending
    // per burst of typing.
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (text === "") {
      // Empty box clears the list immediately and issues no request.
      this.state.inFlight = null;
      this.clearNotice();
      this.renderSuggestions([], "");
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.request(text);
    }, this.state.debounceMs);
  }

  /** Cancel any pending debounce timer. */
  dispose(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  /**
   * Paint one response. Rows keep the exact order given: the service already
   * ranks by weight, the page never re-sorts or filters.
   */
  renderSuggestions(suggestions: Suggestion[], query: string): void {
    this.state.rendered = suggestions;
    this.list.textContent = "";
    if (suggestions.length === 0) {
      const row = document.createElement("li");
      row.className = "placeholder";
      row.textContent = "no suggestions";
      this.list.appendChild(row);
      return;
    }
    for (const s of suggestions) {
      const row = document.createElement("li");
      const phrase = document.createElement("span");
      phrase.className = "phrase";
      const head = document.createElement("mark");
      head.textContent = s.phrase.slice(0, query.length);
      phrase.appendChild(head);
      phrase.appendChild(document.createTextNode(s.phrase.slice(query.length)));
      const weight = document.createElement("span");
      weight.className = "weight";
      weight.textContent = String(s.weight);
      row.appendChild(phrase);
      row.appendChild(weight);
      this.list.appendChild(row);
    }
  }

  private async request(query: string): Promise<void> {
    const id = ++this.seq;
    this.state.inFlight = id;
    const url =
      `${this.state.baseUrl}/suggest?q=${encodeURIComponent(query)}` +
      `&n=${SUGGESTION_COUNT}`;
    try {
      const resp = await this.fetchFn(url);
      if (!resp.ok) {
        throw new Error(`suggest returned ${resp.status}`);
      }
      const body = (await resp.json()) as SuggestResponse;
      if (id !== this.seq || id <= this.painted) {
        return; // superseded while waiting: drop silently
      }
      this.painted = id;
      this.state.inFlight = null;
      this.clearNotice();
      this.renderSuggestions(body.suggestions, query);
    } catch (err) {
      if (id !== this.seq || id <= this.painted) {
        return; // failure of a request nobody cares about anymore
      }
      this.state.inFlight = null;
      // Non-blocking: the last good list stays on screen.
      this.notice.textContent = `suggestions unavailable: ${String(err)}`;
      this.notice.classList.add("visible");
    }
  }

  private clearNotice(): void {
    this.notice.textContent = "";
    this.notice.classList.remove("visible");
  }
}
