int cwe401_bug_free_in_branch_m_main(int c) {
  char *p = malloc(16);
  p[0] = 1;
  if (c) {
    free(p);
  }
  return 0;
}
