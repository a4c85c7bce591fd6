import { ApiClient, ApiError } from "./api.js";
import type {
  AnnotationRecord,
  SampleStatus,
  SampleView,
  Smell,
  Verdict,
} from "./types.js";
import { SMELLS } from "./types.js";

const SHELL = `
<header class="bar">
  <h1>smellgraph review</h1>
  <div id="progress" class="progress"></div>
</header>
<main class="columns">
  <section class="panel" id="queue-panel">
    <div class="filters">
      <select id="filter-smell">
        <option value="">all smells</option>
        <option value="long_method">long method</option>
        <option value="large_class">large class</option>
        <option value="feature_envy">feature envy</option>
      </select>
      <select id="filter-status">
        <option value="pending">pending</option>
        <option value="labeled">labeled</option>
        <option value="">all</option>
      </select>
      <button id="refresh" type="button">refresh</button>
    </div>
    <ul id="queue" class="queue"></ul>
  </section>
  <section class="panel" id="sample-panel">
    <div id="sample-empty">Pick a sample from the queue.</div>
    <div id="sample" hidden>
      <div id="sample-meta"></div>
      <pre id="source" class="source"></pre>
      <div id="advisor"></div>
      <form id="checklist"></form>
      <div id="action-editor"></div>
      <div class="verdict-bar">
        <label>reviewer
          <input id="annotator" type="text" value="reviewer" />
        </label>
        <button id="submit-smelly" type="button">smelly</button>
        <button id="submit-clean" type="button">clean</button>
        <button id="submit-skip" type="button">skip</button>
      </div>
      <div id="toast" class="toast"></div>
    </div>
  </section>
</main>
`;

function el<T extends HTMLElement>(root: ParentNode, selector: string): T {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
}

/** The single-page review app.  All server traffic goes through ApiClient. */
export class App {
  private view: SampleView | null = null;
  private ranges: Array<[number, number]> = [];

  constructor(
    private readonly root: HTMLElement,
    readonly api: ApiClient,
  ) {}

  async init(): Promise<void> {
    this.root.innerHTML = SHELL;
    el<HTMLButtonElement>(this.root, "#refresh").addEventListener("click", () => {
      void this.refresh();
    });
    el<HTMLSelectElement>(this.root, "#filter-smell").addEventListener("change", () => {
      void this.refresh();
    });
    el<HTMLSelectElement>(this.root, "#filter-status").addEventListener("change", () => {
      void this.refresh();
    });
    for (const verdict of ["smelly", "clean", "skip"] as Verdict[]) {
      el<HTMLButtonElement>(this.root, `#submit-${verdict}`).addEventListener(
        "click",
        () => {
          void this.submit(verdict);
        },
      );
    }
    await this.refresh();
  }

  /** Reload the progress header and the queue under the current filters. */
  async refresh(): Promise<void> {
    const progress = await this.api.progress();
    const parts = SMELLS.map((smell) => {
      const row = progress[smell];
      return `${smell.replace("_", " ")}: ${row.pending} pending / ${row.labeled} done`;
    });
    el(this.root, "#progress").textContent = parts.join(" · ");

    const smell = el<HTMLSelectElement>(this.root, "#filter-smell").value as Smell | "";
    const status = el<HTMLSelectElement>(this.root, "#filter-status").value as
      | SampleStatus
      | "";
    const items = await this.api.listSamples(status || undefined, smell || undefined);
    const queue = el<HTMLUListElement>(this.root, "#queue");
    queue.textContent = "";
    for (const item of items) {
      const li = document.createElement("li");
      const button = document.createElement("button");
      button.type = "button";
      button.className = "queue-item";
      button.dataset.id = item.id;
      button.textContent = `${item.entity} — ${item.smell.replace("_", " ")} (${item.status})`;
      button.addEventListener("click", () => {
        void this.openSample(item.id);
      });
      li.appendChild(button);
      queue.appendChild(li);
    }
  }

  async openSample(id: string): Promise<void> {
    this.renderSample(await this.api.getSample(id));
  }

  private renderSample(view: SampleView): void {
    this.view = view;
    this.ranges = [];
    el(this.root, "#sample-empty").hidden = true;
    const panel = el(this.root, "#sample");
    panel.hidden = false;

    const meta = el(this.root, "#sample-meta");
    meta.textContent = "";
    const title = document.createElement("h2");
    title.id = "sample-title";
    title.textContent = view.entity;
    const detail = document.createElement("p");
    detail.textContent =
      `${view.id} · ${view.file} lines ${view.span[0]}–${view.span[1]} · ` +
      `status ${view.status}` +
      (view.label === null ? "" : ` (label ${view.label})`);
    meta.append(title, detail);

    this.renderSource(view);

    const advisor = el(this.root, "#advisor");
    const fired = Object.keys(view.advisor.fired_terms);
    advisor.textContent = view.advisor.positive
      ? `rule advisor agrees (${fired.join(", ")})`
      : "rule advisor sees nothing";

    const checklist = el<HTMLFormElement>(this.root, "#checklist");
    checklist.textContent = "";
    view.checklist.forEach((question, index) => {
      const label = document.createElement("label");
      label.className = "question";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.className = "answer";
      box.dataset.index = String(index);
      label.append(box, document.createTextNode(" " + question));
      checklist.appendChild(label);
    });

    this.renderActionEditor(view);
    this.toast("");
  }

  private renderSource(view: SampleView): void {
    const source = el<HTMLPreElement>(this.root, "#source");
    source.textContent = "";
    const lines = view.source.split("\n");
    lines.forEach((text, offset) => {
      const line = document.createElement("span");
      line.className = "code-line";
      const number = view.span[0] + offset;
      line.dataset.line = String(number);
      line.textContent = `${String(number).padStart(4, " ")}  ${text}\n`;
      source.appendChild(line);
    });
  }

  private renderActionEditor(view: SampleView): void {
    const editor = el(this.root, "#action-editor");
    editor.textContent = "";
    if (view.smell === "long_method") {
      this.renderRangeEditor(editor, view);
    } else if (view.smell === "large_class") {
      const caption = document.createElement("p");
      caption.textContent = "Pick the methods to extract into a new class:";
      editor.appendChild(caption);
      for (const methodId of view.methods ?? []) {
        const label = document.createElement("label");
        label.className = "method";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.className = "method-pick";
        box.value = methodId;
        label.append(box, document.createTextNode(" " + methodId));
        editor.appendChild(label);
      }
    } else {
      const label = document.createElement("label");
      label.className = "move";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.id = "confirm-move";
      label.append(
        box,
        document.createTextNode(` move ${view.entity} to ${view.candidate ?? "?"}`),
      );
      editor.appendChild(label);
    }
  }

  private renderRangeEditor(editor: HTMLElement, view: SampleView): void {
    const caption = document.createElement("p");
    caption.textContent =
      "Mark the line ranges worth extracting (each must cover whole statements):";
    editor.appendChild(caption);

    const chips = document.createElement("div");
    chips.className = "chips";
    const spans = Object.entries(view.statement_spans ?? {}).sort(
      (a, b) => a[1][0] - b[1][0],
    );
    for (const [statementId, [first, last]] of spans) {
      const chip = document.createElement("button");
      chip.type = "button";
      chip.className = "stmt-chip";
      chip.dataset.start = String(first);
      chip.dataset.end = String(last);
      chip.textContent = `${statementId.split("#")[1] ?? statementId}: ${first}–${last}`;
      chip.addEventListener("click", () => {
        this.addRange(first, last);
      });
      chips.appendChild(chip);
    }
    editor.appendChild(chips);

    const controls = document.createElement("div");
    controls.className = "range-controls";
    const start = document.createElement("input");
    start.type = "number";
    start.id = "range-start";
    start.placeholder = "first line";
    const end = document.createElement("input");
    end.type = "number";
    end.id = "range-end";
    end.placeholder = "last line";
    const add = document.createElement("button");
    add.type = "button";
    add.id = "add-range";
    add.textContent = "add range";
    add.addEventListener("click", () => {
      this.addRange(Number(start.value), Number(end.value));
    });
    controls.append(start, end, add);
    editor.appendChild(controls);

    const list = document.createElement("ul");
    list.id = "ranges";
    editor.appendChild(list);
  }

  private addRange(first: number, last: number): void {
    if (!Number.isInteger(first) || !Number.isInteger(last) || first > last) {
      this.toast("ranges need a first line not after the last line");
      return;
    }
    this.ranges.push([first, last]);
    const list = el<HTMLUListElement>(this.root, "#ranges");
    const item = document.createElement("li");
    item.className = "range";
    item.textContent = `${first}–${last} `;
    const remove = document.createElement("button");
    remove.type = "button";
    remove.className = "remove-range";
    remove.textContent = "remove";
    remove.addEventListener("click", () => {
      this.ranges = this.ranges.filter((r) => !(r[0] === first && r[1] === last));
      item.remove();
    });
    item.appendChild(remove);
    list.appendChild(item);
  }

  /** The record the verdict buttons would submit right now. */
  buildRecord(verdict: Verdict): AnnotationRecord {
    const view = this.view;
    if (!view) throw new Error("no sample open");
    const answers = Array.from(
      this.root.querySelectorAll<HTMLInputElement>("#checklist .answer"),
    ).map((box) => box.checked);
    let action: AnnotationRecord["action"] = [];
    if (verdict === "smelly") {
      if (view.smell === "long_method") {
        action = this.ranges.map((r) => [r[0], r[1]]);
      } else if (view.smell === "large_class") {
        action = Array.from(
          this.root.querySelectorAll<HTMLInputElement>(".method-pick:checked"),
        ).map((box) => box.value);
      } else if (el<HTMLInputElement>(this.root, "#confirm-move").checked) {
        action = [view.candidate ?? ""];
      }
    }
    return {
      sample_id: view.id,
      annotator: el<HTMLInputElement>(this.root, "#annotator").value,
      verdict,
      guideline_answers: answers,
      action,
      timestamp: Date.now() / 1000,
    };
  }

  async submit(verdict: Verdict): Promise<boolean> {
    const view = this.view;
    if (!view) return false;
    const record = this.buildRecord(verdict);
    if (verdict === "smelly" && record.action.length === 0) {
      this.toast("a smelly verdict needs a refactoring target");
      return false;
    }
    try {
      const updated = await this.api.submitAnnotation(view.id, record);
      this.renderSample(updated);
      this.toast(`saved: ${verdict}`);
      await this.refresh();
      return true;
    } catch (error) {
      if (error instanceof ApiError) {
        this.toast(`rejected (${error.status}): ${error.message}`);
        return false;
      }
      throw error;
    }
  }

  private toast(message: string): void {
    el(this.root, "#toast").textContent = message;
  }
}
