/**
 * The comparison dashboard: one row per stored model with its stored
 * accuracy/RMSE/MAPE, sortable by column. The client computes nothing; a
 * model whose metrics endpoint 404s shows "not evaluated".
 */

import { ApiClient } from "./api.js";

export interface DashboardRow {
  model_id: string;
  algorithm: string;
  created_at: string;
  accuracy: number | null;
  rmse: number | null;
  mape: number | null;
}

export type SortKey = "accuracy" | "rmse" | "mape" | "algorithm";

export async function fetchRows(api: ApiClient): Promise<DashboardRow[]> {
  const models = await api.getModels();
  return Promise.all(
    models.map(async (m) => {
      const metrics = await api.getMetrics(m.model_id);
      return {
        model_id: m.model_id,
        algorithm: m.algorithm,
        created_at: m.created_at,
        accuracy: metrics ? metrics.report.accuracy : null,
        rmse: metrics ? metrics.report.rmse : null,
        mape: metrics ? metrics.report.mape : null,
      };
    })
  );
}

/** Rows without metrics sort to the bottom regardless of direction. */
export function sortRows(rows: DashboardRow[], key: SortKey, descending: boolean): DashboardRow[] {
  const sorted = [...rows];
  sorted.sort((a, b) => {
    if (key === "algorithm") {
      return descending
        ? b.algorithm.localeCompare(a.algorithm)
        : a.algorithm.localeCompare(b.algorithm);
    }
    const av = a[key];
    const bv = b[key];
    if (av === null && bv === null) return 0;
    if (av === null) return 1;
    if (bv === null) return -1;
    return descending ? bv - av : av - bv;
  });
  return sorted;
}

export class Dashboard {
  readonly element: HTMLElement;
  private rows: DashboardRow[] = [];
  private sortKey: SortKey = "accuracy";
  private descending = true;

  constructor(private readonly api: ApiClient) {
    this.element = document.createElement("section");
    this.element.className = "dashboard";
  }

  async load(): Promise<void> {
    try {
      this.rows = await fetchRows(this.api);
    } catch {
      this.element.replaceChildren(message("Could not load models from the service."));
      return;
    }
    this.render();
  }

  private setSort(key: SortKey): void {
    if (this.sortKey === key) {
      this.descending = !this.descending;
    } else {
      this.sortKey = key;
      this.descending = key !== "algorithm";
    }
    this.render();
  }

  private render(): void {
    if (this.rows.length === 0) {
      this.element.replaceChildren(
        message("No models stored yet. Train some with: liverscreen compare --data data/ilpd.csv --store <dir>")
      );
      return;
    }
    const table = document.createElement("table");
    table.className = "dashboard-table";
    const head = document.createElement("tr");
    const columns: [string, SortKey | null][] = [
      ["Model", "algorithm"],
      ["Accuracy", "accuracy"],
      ["RMSE", "rmse"],
      ["MAPE", "mape"],
      ["Created", null],
    ];
    for (const [label, key] of columns) {
      const th = document.createElement("th");
      if (key) {
        const button = document.createElement("button");
        button.type = "button";
        button.textContent =
          label + (this.sortKey === key ? (this.descending ? " ↓" : " ↑") : "");
        button.addEventListener("click", () => this.setSort(key));
        th.appendChild(button);
      } else {
        th.textContent = label;
      }
      head.appendChild(th);
    }
    table.appendChild(head);

    for (const row of sortRows(this.rows, this.sortKey, this.descending)) {
      const tr = document.createElement("tr");
      tr.setAttribute("data-model", row.model_id);
      const name = document.createElement("td");
      name.textContent = `${row.algorithm} (${row.model_id.slice(0, 12)})`;
      tr.appendChild(name);
      if (row.accuracy === null) {
        const cell = document.createElement("td");
        cell.colSpan = 3;
        cell.className = "not-evaluated";
        cell.textContent = "not evaluated";
        tr.appendChild(cell);
      } else {
        for (const value of [
          `${(100 * row.accuracy).toFixed(2)}%`,
          row.rmse!.toFixed(3),
          row.mape!.toFixed(3),
        ]) {
          const cell = document.createElement("td");
          cell.textContent = value;
          tr.appendChild(cell);
        }
      }
      const created = document.createElement("td");
      created.textContent = row.created_at.slice(0, 19);
      tr.appendChild(created);
      table.appendChild(tr);
    }
    this.element.replaceChildren(table);
  }
}

function message(text: string): HTMLElement {
  const p = document.createElement("p");
  p.className = "empty-state";
  p.textContent = text;
  return p;
}
