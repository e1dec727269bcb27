int cwe401_bug_error_path_in_worker_m_work(int n) {
  char *buf = malloc(16);
  if (n < 0) {
    return 1;
  }
  buf[0] = n;
  free(buf);
  return 0;
}

int cwe401_bug_error_path_in_worker_m_main(int c) {
  return cwe401_bug_error_path_in_worker_m_work(c);
}
