/**
 * Node bindings for the ajudge answer-verification CLI.
 *
 * All judging logic lives in the core; this wrapper only shells out to the
 * `ajudge` executable and parses its JSON output, so verdicts are identical
 * to the CLI's by construction.  Calls are async: the subprocess runs without
 * blocking the event loop.
 */

import { execFile } from 'node:child_process';
import { mkdtemp, readFile, rm, writeFile } from 'node:fs/promises';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export const VERSION = '0.1.0';

export type QuestionType = 'multiple choice' | 'math' | 'short answer' | 'classification';

const QUESTION_TYPES: ReadonlySet<string> = new Set([
  'multiple choice', 'math', 'short answer', 'classification',
]);

export interface JudgeInput {
  question: string;
  questionType: QuestionType;
  llmOutput: string;
  correctAnswer: string;
}

export interface BindingJudgment {
  verdict: 'Correct' | 'Incorrect';
  extracted: string | null;
  trace: string[];
}

export interface ConfigOverrides {
  /** Path to the ajudge executable (default: $AJUDGE_CLI or "ajudge"). */
  cli?: string;
  seed?: number;
  tau?: number;
  absTol?: number;
  relTol?: number;
  sampleCount?: number;
  mixWeight?: number;
}

interface RunResult {
  code: number;
  stdout: string;
  stderr: string;
}

function cliPath(overrides?: ConfigOverrides): string {
  return overrides?.cli ?? process.env.AJUDGE_CLI ?? 'ajudge';
}

function configFlags(overrides?: ConfigOverrides): string[] {
  const flags: string[] = [];
  if (overrides?.seed !== undefined) flags.push('--seed', String(overrides.seed));
  if (overrides?.tau !== undefined) flags.push('--tau', String(overrides.tau));
  if (overrides?.absTol !== undefined) flags.push('--abs-tol', String(overrides.absTol));
  if (overrides?.relTol !== undefined) flags.push('--rel-tol', String(overrides.relTol));
  if (overrides?.sampleCount !== undefined) {
    flags.push('--sample-count', String(overrides.sampleCount));
  }
  if (overrides?.mixWeight !== undefined) {
    flags.push('--mix-weight', String(overrides.mixWeight));
  }
  return flags;
}

function run(command: string, args: string[]): Promise<RunResult> {
  return new Promise((resolve, reject) => {
    execFile(command, args, { maxBuffer: 64 * 1024 * 1024 }, (error, stdout, stderr) => {
      if (error && typeof error.code !== 'number') {
        reject(new Error(`failed to launch ${command}: ${error.message}`));
        return;
      }
      resolve({ code: error ? (error.code as number) : 0, stdout, stderr });
    });
  });
}

function validateInput(input: JudgeInput, index?: number): void {
  const where = index === undefined ? '' : ` (record ${index})`;
  if (!QUESTION_TYPES.has(input.questionType)) {
    throw new TypeError(`invalid questionType "${input.questionType}"${where}`);
  }
  if (!input.correctAnswer || !input.correctAnswer.trim()) {
    throw new RangeError(`correctAnswer must be non-empty${where}`);
  }
  if (index !== undefined) {
    // the batch wire format additionally requires these fields non-empty
    if (!input.llmOutput || !input.llmOutput.trim()) {
      throw new RangeError(`llmOutput must be non-empty${where}`);
    }
    if (!input.question || !input.question.trim()) {
      throw new RangeError(`question must be non-empty${where}`);
    }
  }
}

/** Version string reported by the core CLI ("ajudge 0.1.0" -> "0.1.0"). */
export async function coreVersion(overrides?: ConfigOverrides): Promise<string> {
  const result = await run(cliPath(overrides), ['--version']);
  if (result.code !== 0) {
    throw new Error(`ajudge --version failed: ${result.stderr}`);
  }
  const parts = result.stdout.trim().split(/\s+/);
  return parts[parts.length - 1];
}

/** Judge one response; verdict is byte-identical to `ajudge verify`. */
export async function judgeAnswer(
  input: JudgeInput,
  overrides?: ConfigOverrides,
): Promise<BindingJudgment> {
  validateInput(input);
  const args = [
    'verify', '--json',
    '--question', input.question,
    '--type', input.questionType,
    '--output', input.llmOutput,
    '--answer', input.correctAnswer,
    ...configFlags(overrides),
  ];
  const result = await run(cliPath(overrides), args);
  if (result.code !== 0 && result.code !== 1) {
    throw new Error(`ajudge verify failed (exit ${result.code}): ${result.stderr}`);
  }
  const payload = JSON.parse(result.stdout) as BindingJudgment;
  return { verdict: payload.verdict, extracted: payload.extracted, trace: payload.trace };
}

/** Judge many records in one core invocation; order is preserved. */
export async function judgeBatch(
  records: JudgeInput[],
  overrides?: ConfigOverrides,
): Promise<BindingJudgment[]> {
  if (records.length === 0) return [];
  records.forEach((record, index) => validateInput(record, index));
  const dir = await mkdtemp(join(tmpdir(), 'ajudge-'));
  const inputPath = join(dir, 'input.jsonl');
  const outputPath = join(dir, 'output.jsonl');
  try {
    const lines = records.map((record) =>
      JSON.stringify({
        dataset: 'bindings',
        question: record.question,
        question_type: record.questionType,
        correct_answer: record.correctAnswer,
        llm_output: record.llmOutput,
      }),
    );
    await writeFile(inputPath, lines.join('\n') + '\n', 'utf-8');
    const args = ['batch', '--input', inputPath, '--out', outputPath, ...configFlags(overrides)];
    const result = await run(cliPath(overrides), args);
    if (result.code !== 0) {
      throw new Error(`ajudge batch failed (exit ${result.code}): ${result.stderr}`);
    }
    const body = await readFile(outputPath, 'utf-8');
    return body
      .split('\n')
      .filter((line) => line.trim())
      .map((line) => {
        const obj = JSON.parse(line) as {
          predicted_judgment_result: 'Correct' | 'Incorrect';
          predicted_extracted_answer: string | null;
          judge_trace: string[];
        };
        return {
          verdict: obj.predicted_judgment_result,
          extracted: obj.predicted_extracted_answer,
          trace: obj.judge_trace,
        };
      });
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}
