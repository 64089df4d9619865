// Test support: fixture payloads captured from the live API, plus a fetch
// stub so DOM tests run against the real wire shapes without a server.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T = unknown>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8")) as T;
}

export interface RecordedCall {
  method: string;
  url: string;
  body?: unknown;
}

type Reply = unknown | ((url: string, body: unknown) => unknown);

export interface Route {
  method: string;
  pattern: RegExp;
  reply: Reply;
  status?: number;
}

export function stubFetch(routes: Route[]): { calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ method, url, body });
    for (const route of routes) {
      if (route.method === method && route.pattern.test(url)) {
        const payload =
          typeof route.reply === "function"
            ? (route.reply as (u: string, b: unknown) => unknown)(url, body)
            : route.reply;
        return new Response(JSON.stringify(payload), {
          status: route.status ?? 200,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(
      JSON.stringify({ code: "HTTPError", message: `no stub for ${method} ${url}` }),
      { status: 404, headers: { "Content-Type": "application/json" } },
    );
  }) as typeof fetch;
  return { calls };
}

export async function settle(): Promise<void> {
  // Flush chained microtasks plus a macrotask for queued awaits.
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
